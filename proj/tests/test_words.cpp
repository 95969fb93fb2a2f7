#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/words.hpp"

using namespace compro;

namespace {

CommGraph free2() { return CommGraph(2); }

CommGraph triangle_with_edge() {
  CommGraph g(3);
  g.add_edge(1, 2);
  return g;
}

Word random_word(std::mt19937_64& rng, int m, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    int gen = 1 + int(rng() % std::uint64_t(m));
    std::int64_t exp = std::int64_t(rng() % 7) - 3;
    if (exp != 0) w.syl.push_back({gen, exp});
  }
  return w;
}

// random adjacent swap of commuting syllables plus random splits: another
// spelling of the same element
Word reshuffle(std::mt19937_64& rng, const CommGraph& g, Word w) {
  for (int round = 0; round < 40; ++round) {
    if (w.syl.size() < 2) break;
    size_t i = rng() % (w.syl.size() - 1);
    auto& a = w.syl[i];
    auto& b = w.syl[i + 1];
    if (a.gen != b.gen && g.commute(a.gen, b.gen)) std::swap(a, b);
    if (rng() % 3 == 0 && w.syl[i].exp != 1) {
      // split one syllable in two
      Syllable s = w.syl[i];
      w.syl[i].exp = 1;
      w.syl.insert(w.syl.begin() + long(i) + 1, {s.gen, s.exp - 1});
    }
  }
  return w;
}

}  // namespace

TEST_CASE("parse and print") {
  Word w = Word::parse("a1^3 a2^-5 a1");
  REQUIRE(w.syl.size() == 3);
  CHECK(w.syl[0] == Syllable{1, 3});
  CHECK(w.syl[1] == Syllable{2, -5});
  CHECK(w.syl[2] == Syllable{1, 1});
  CHECK(Word::parse("s0 s1^-2").syl[0].gen == -1);
  CHECK(Word::parse("s0 s1^-2").syl[1].gen == -2);
  CHECK_THROWS(Word::parse("x1"));
}

TEST_CASE("free product normal form merges and cancels") {
  auto g = free2();
  WordCalc calc(g);
  CHECK(calc.normal(Word::parse("a1 a1^2 a2 a2^-1 a1")).str() == "a1^4");
  CHECK(calc.trivial(Word::parse("a1 a2 a2^-1 a1^-1")));
  CHECK(calc.mul(Word::parse("a1 a2"), Word::parse("a2^-1 a1")).str() == "a1^2");
  CHECK(calc.inverse(Word::parse("a1 a2^3")).str() == "a2^-3 a1^-1");
}

TEST_CASE("commuting generators sort to a canonical spelling") {
  auto g = triangle_with_edge();
  WordCalc calc(g);
  CHECK(calc.normal(Word::parse("a2^5 a1^3")) == calc.normal(Word::parse("a1^3 a2^5")));
  // a3 blocks the exchange
  CHECK(calc.normal(Word::parse("a2 a3 a1")).size() == 3);
  CHECK_FALSE(calc.normal(Word::parse("a2 a3 a1")) ==
              calc.normal(Word::parse("a1 a2 a3")));
  // merge through a commuting block
  CHECK(calc.normal(Word::parse("a1 a2 a1")).str() == "a1^2 a2");
}

TEST_CASE("normal form is invariant under respellings") {
  std::mt19937_64 rng(7);
  auto g = triangle_with_edge();
  WordCalc calc(g);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, 3, 6);
    Word u = reshuffle(rng, g, w);
    CHECK(calc.normal(w) == calc.normal(u));
  }
}

TEST_CASE("inverse and associativity properties") {
  std::mt19937_64 rng(11);
  auto g = triangle_with_edge();
  WordCalc calc(g);
  for (int trial = 0; trial < 200; ++trial) {
    Word a = random_word(rng, 3, 4);
    Word b = random_word(rng, 3, 4);
    Word c = random_word(rng, 3, 4);
    CHECK(calc.trivial(calc.mul(a, calc.inverse(a))));
    CHECK(calc.mul(calc.mul(a, b), c) == calc.mul(a, calc.mul(b, c)));
  }
}

TEST_CASE("quotient arithmetic reduces exponents") {
  auto g = free2();
  WordCalc mod5(g, 5);
  CHECK(mod5.trivial(Word::parse("a1^5")));
  CHECK(mod5.trivial(Word::parse("a1^10 a2^-5")));
  CHECK_FALSE(mod5.trivial(Word::parse("a1^3")));
  CHECK(mod5.normal(Word::parse("a1^-1")).syl[0].exp == 4);
  CHECK(mod5.trivial(mod5.mul(Word::parse("a1^2"), Word::parse("a1^3"))));
}

TEST_CASE("coset canonicalization drops star tails") {
  auto g = triangle_with_edge();
  WordCalc calc(g);
  std::vector<bool> star1{true, true, false};  // generators 1 and 2 drop
  CHECK(calc.coset_canonical(Word::parse("a3 a1^4"), star1).str() == "a3");
  CHECK(calc.coset_canonical(Word::parse("a3 a1^4 a2^2"), star1).str() == "a3");
  // a trailing a1 hidden behind a commuting a2 still drops
  CHECK(calc.coset_canonical(Word::parse("a3 a1^4 a2^2 a1"), star1).str() == "a3");
  // nothing drops through a blocking a3
  CHECK(calc.coset_canonical(Word::parse("a1 a3"), star1).str() == "a1 a3");

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(rng, 3, 5);
    Word s = random_word(rng, 2, 3);  // a word in the star generators
    CHECK(calc.coset_canonical(w, star1) ==
          calc.coset_canonical(calc.mul(w, s), star1));
  }
}

TEST_CASE("parabolic membership reads the normal form") {
  auto g = triangle_with_edge();
  WordCalc calc(g);
  std::vector<bool> star1{true, true, false};
  CHECK(calc.in_parabolic(Word::parse("a1 a2^-3"), star1));
  CHECK(calc.in_parabolic(Word::parse("a3 a3^-1"), star1));
  CHECK_FALSE(calc.in_parabolic(Word::parse("a3"), star1));
}
