#include "core/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace compro {

// ---------------------------------------------------------------------------
// Word text form

Word Word::parse(std::string_view text) {
  Word out;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != 'a' && text[i] != 's' && text[i] != 'g')
      throw usage_error("bad word syntax near '" + std::string(text.substr(i)) +
                        "' (expected a<k>, s<k> or g<k>)");
    char prefix = text[i];
    ++i;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw usage_error("generator index missing in word");
    int gen = 0;
    std::from_chars(text.data() + start, text.data() + i, gen);
    if (prefix == 's' || prefix == 'g') gen = -(gen + 1);  // symbol alphabet, 0-based
    std::int64_t exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      size_t es = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      auto [p, ec] = std::from_chars(text.data() + es, text.data() + i, exp);
      if (ec != std::errc() || p != text.data() + i)
        throw usage_error("bad exponent in word");
    }
    if (exp != 0) out.syl.push_back({gen, exp});
    skip_ws();
  }
  return out;
}

std::string Word::str() const {
  std::string s;
  for (const auto& sy : syl) {
    if (!s.empty()) s += ' ';
    if (sy.gen < 0)
      s += "s" + std::to_string(-sy.gen - 1);
    else
      s += "a" + std::to_string(sy.gen);
    if (sy.exp != 1) s += "^" + std::to_string(sy.exp);
  }
  return s;
}

// ---------------------------------------------------------------------------
// CommGraph

CommGraph::CommGraph(int m) : m_(m), adj_(size_t(m) * size_t(m), false) {
  if (m < 1) throw usage_error("commutation graph needs at least one generator");
}

void CommGraph::add_edge(int i, int j) {
  if (i < 1 || j < 1 || i > m_ || j > m_ || i == j)
    throw usage_error("bad commutation edge {" + std::to_string(i) + "," +
                      std::to_string(j) + "}");
  adj_[idx(i, j)] = true;
  adj_[idx(j, i)] = true;
}

std::vector<std::pair<int, int>> CommGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= m_; ++i)
    for (int j = i + 1; j <= m_; ++j)
      if (commute(i, j)) out.emplace_back(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// WordCalc

WordCalc::WordCalc(const CommGraph& graph, std::int64_t modulus)
    : graph_(&graph), modulus_(modulus) {
  if (modulus < 0) throw usage_error("negative exponent modulus");
}

std::int64_t WordCalc::reduce_exp(std::int64_t e) const {
  if (modulus_ == 0) return e;
  e %= modulus_;
  if (e < 0) e += modulus_;
  return e;  // canonical range 0..q-1; 0 syllables are dropped
}

Word WordCalc::normal(const Word& w) const {
  // Fold-insert normal form: the output is kept lexicographically least at
  // all times. Each incoming syllable first looks backward across commuting
  // syllables for a block of its own generator (merge, possibly cancel),
  // otherwise it bubbles left past commuting larger generators. A
  // cancellation re-inserts the tail behind the removed block, since the
  // removal can expose new merges and exchanges.
  std::vector<Syllable> out;
  out.reserve(w.syl.size());

  // returns the insertion work left behind by a cancellation
  auto insert_one = [&](auto&& self, Syllable s) -> void {
    std::int64_t e = reduce_exp(s.exp);
    if (e == 0) return;
    s.exp = e;
    if (s.gen < 1 || s.gen > graph_->m())
      throw usage_error("syllable over unknown generator a" + std::to_string(s.gen));

    // merge scan: walk back while everything commutes with s
    size_t j = out.size();
    while (j > 0 && out[j - 1].gen != s.gen && graph_->commute(out[j - 1].gen, s.gen))
      --j;
    if (j > 0 && out[j - 1].gen == s.gen) {
      std::int64_t merged = reduce_exp(out[j - 1].exp + s.exp);
      if (merged != 0) {
        out[j - 1].exp = merged;
        return;
      }
      std::vector<Syllable> tail(out.begin() + long(j), out.end());
      out.erase(out.begin() + long(j - 1), out.end());
      for (const auto& t : tail) self(self, t);
      return;
    }

    // placement scan: within the commuting suffix (everything from j on),
    // the least spelling puts s before the first larger generator
    size_t pos = out.size();
    for (size_t p = j; p < out.size(); ++p) {
      if (out[p].gen > s.gen) {
        pos = p;
        break;
      }
    }
    out.insert(out.begin() + long(pos), s);
  };

  for (const auto& s : w.syl) {
    if (s.gen == 0) throw usage_error("syllable with generator 0");
    if (s.gen > 0) {
      insert_one(insert_one, s);
    } else {
      throw usage_error("symbol alphabet cannot be multiplied directly");
    }
  }
  Word r;
  r.syl = std::move(out);
  return r;
}

Word WordCalc::mul(const Word& a, const Word& b) const {
  Word w;
  w.syl.reserve(a.syl.size() + b.syl.size());
  w.syl = a.syl;
  w.syl.insert(w.syl.end(), b.syl.begin(), b.syl.end());
  return normal(w);
}

Word WordCalc::inverse(const Word& a) const {
  Word w;
  w.syl.reserve(a.syl.size());
  for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it)
    w.syl.push_back({it->gen, -it->exp});
  return normal(w);
}

Word WordCalc::conjugate(const Word& g, const Word& x) const {
  return mul(mul(g, x), inverse(g));
}

Word WordCalc::power(const Word& a, std::int64_t k) const {
  if (k == 0) return Word{};
  Word base = k > 0 ? normal(a) : inverse(a);
  std::int64_t n = k > 0 ? k : -k;
  Word acc;
  while (n > 0) {
    // simple repeated multiplication; exponents stay small in practice
    acc = mul(acc, base);
    --n;
  }
  return acc;
}

bool WordCalc::commute_elements(const Word& a, const Word& b) const {
  return trivial(mul(mul(a, b), mul(inverse(a), inverse(b))));
}

Word WordCalc::coset_canonical(const Word& w, const std::vector<bool>& droppable) const {
  Word cur = normal(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = static_cast<int>(cur.syl.size()) - 1; i >= 0; --i) {
      int g = cur.syl[i].gen;
      if (g < 1 || g > static_cast<int>(droppable.size()) || !droppable[size_t(g - 1)])
        continue;
      bool clears = true;
      for (size_t k = size_t(i) + 1; k < cur.syl.size(); ++k) {
        if (cur.syl[k].gen == g || !graph_->commute(cur.syl[k].gen, g)) {
          clears = false;
          break;
        }
      }
      if (clears) {
        cur.syl.erase(cur.syl.begin() + i);
        cur = normal(cur);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

bool WordCalc::in_parabolic(const Word& w, const std::vector<bool>& gens) const {
  Word n = normal(w);
  for (const auto& s : n.syl) {
    if (s.gen < 1 || s.gen > static_cast<int>(gens.size()) || !gens[size_t(s.gen - 1)])
      return false;
  }
  return true;
}

}  // namespace compro
