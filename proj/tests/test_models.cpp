#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/axioms.hpp"
#include "core/calibrate.hpp"
#include "core/errors.hpp"
#include "core/json_io.hpp"
#include "core/model.hpp"
#include "oracles.hpp"

using namespace compro;

namespace {

TreeSegmentsSpec p11_spec() {
  TreeSegmentsSpec spec;
  for (int v = 0; v + 1 <= 10; ++v) spec.edges.emplace_back(v, v + 1);
  spec.segments = {{0, 0, 1}, {10, 10, 1}, {4, 6, 1}, {2, 2, 1}};
  spec.overlap = 0;
  return spec;
}

GraphProductSpec fp2_spec(int radius = 4) {
  GraphProductSpec spec;
  spec.m = 2;
  spec.q = 0;  // auto
  spec.radius = radius;
  return spec;
}

}  // namespace

TEST_CASE("p11 generator reproduces the fixture tables") {
  auto res = gen_tree_segments(p11_spec());
  REQUIRE(res.system);
  const auto& sys = *res.system;
  REQUIRE(sys.total() == 4);

  auto fixture = load_system_json(Json::parse(read_text_file(std::string(COMPRO_FIXTURES_DIR) + "/p11.json")), {});
  for (Gid y = 0; y < 4; ++y)
    for (Gid x = 0; x < 4; ++x)
      for (Gid z = 0; z < 4; ++z) {
        if (x == y || z == y) continue;
        auto a = sys.dpi(y, x, z);
        auto b = fixture.dpi(y, x, z);
        CHECK(a.has_value() == b.has_value());
        if (a && b) CHECK(*a == *b);
      }
}

TEST_CASE("generated projections equal the breadth-first oracle") {
  TreeSegmentsSpec spec;
  spec.seed = 42;
  spec.vertices = 60;
  spec.segment_count = 14;
  auto res = gen_tree_segments(spec);
  const auto& sys = *res.system;

  oracle::Tree tree;
  tree.adj.assign(size_t(spec.vertices), {});
  for (auto [a, b] : res.tree_edges) {
    tree.adj[size_t(a)].push_back(b);
    tree.adj[size_t(b)].push_back(a);
  }
  for (Gid y = 0; y < sys.total(); ++y)
    for (Gid x = 0; x < sys.total(); ++x)
      for (Gid z = x + 1; z < sys.total(); ++z) {
        if (x == y || z == y) continue;
        auto v = sys.dpi(y, x, z);
        if (!v) continue;
        auto px = oracle::project(tree, res.segment_vertices[size_t(y)],
                                  res.segment_vertices[size_t(x)]);
        auto pz = oracle::project(tree, res.segment_vertices[size_t(y)],
                                  res.segment_vertices[size_t(z)]);
        std::set<int> uni = px;
        uni.insert(pz.begin(), pz.end());
        CHECK(*v == Rational(oracle::diameter(tree, uni)));
      }
}

TEST_CASE("seeded instances pass the axioms and the derived properties") {
  for (std::uint64_t seed : {1ull, 7ull, 23ull}) {
    CAPTURE(seed);
    TreeSegmentsSpec spec;
    spec.seed = seed;
    spec.vertices = 50;
    spec.segment_count = 12;
    auto res = gen_tree_segments(spec);
    auto rep = check_axioms(*res.system, res.system->theta());
    CHECK(rep.pass());
    REQUIRE(rep.minimal_theta.has_value());
    CHECK(*rep.minimal_theta == Rational(0));

    Metrics mx(*res.system);
    auto cal = calibrate_constants(mx);
    REQUIRE(cal.ok);
    // geodesically exact projections: the modification is the identity
    CHECK(cal.ladder.kappa == Rational(0));
    for (int c = 1; c <= res.system->m(); ++c) {
      for (Gid x : res.system->coordinate(c))
        for (Gid z : res.system->coordinate(c)) {
          if (x == z) continue;
          for (Gid y : res.system->coordinate(c)) {
            if (y == x || y == z) continue;
            auto d = mx.dY(y, x, z);
            auto raw = res.system->dpi(y, x, z);
            REQUIRE(d);
            REQUIRE(raw);
            CHECK(*d == *raw);
          }
        }
    }
  }
}

TEST_CASE("single segment is vacuous") {
  TreeSegmentsSpec spec;
  spec.edges = {{0, 1}, {1, 2}};
  spec.segments = {{0, 2, 1}};
  auto res = gen_tree_segments(spec);
  CHECK(res.system->total() == 1);
  CHECK(check_axioms(*res.system, Rational(0)).pass());
}

TEST_CASE("same-color overlap beyond the budget is refused") {
  TreeSegmentsSpec spec;
  spec.edges = {{0, 1}, {1, 2}, {2, 3}};
  spec.segments = {{0, 2, 1}, {1, 3, 1}};
  CHECK_THROWS_AS(gen_tree_segments(spec), usage_error);
}

TEST_CASE("free product model materializes the expected truncation") {
  auto model = GraphProductModel::build(fp2_spec(4));
  const auto& sys = model->system();
  // radius 4 keeps two syllables: 1 + 4 + 16 cosets per coordinate
  CHECK(sys.coord_size(1) == 21);
  CHECK(sys.coord_size(2) == 21);
  CHECK(model->q() == 5027);
  CHECK(model->ladder().Theta_Rot == Rational(4025));
  CHECK(model->ladder().Theta_P == Rational(1001));
  CHECK(model->axiom_report().pass());
  // everything is mutually active in a free product
  for (Gid a = 0; a < sys.total(); ++a)
    for (Gid b = 0; b < sys.total(); ++b) CHECK(sys.active(a, b));
}

TEST_CASE("model refuses a rotation exponent that is too weak") {
  GraphProductSpec spec = fp2_spec(3);
  spec.q = 7;
  CHECK_THROWS_WITH_AS(GraphProductModel::build(spec),
                       doctest::Contains("rotation exponent too small"), usage_error);
  spec.allow_unsafe = true;
  CHECK_NOTHROW(GraphProductModel::build(spec));
}

TEST_CASE("coset arithmetic in the free product model") {
  auto model = GraphProductModel::build(fp2_spec(4));
  const auto& sys = model->system();
  Gid base1 = sys.gid({1, 0});
  Gid base2 = sys.gid({2, 0});

  // identity acts trivially
  CHECK(*model->apply(Word{}, base1) == base1);

  // a1^q moves the coordinate-2 base to the rotated coset, same coordinate
  Word g = Word::parse("a1^5027");
  auto img = model->apply(g, base2);
  REQUIRE(img);
  CHECK(sys.coord_of(*img) == 2);
  CHECK(*img != base2);
  CHECK(model->rep(*img).str() == "a1^5027");

  // moving past the truncation yields the boundary marker
  Word far = Word::parse("a2 a1 a2 a1 a2 a1");
  CHECK_FALSE(model->apply(far, base1).has_value());

  // inverse action undoes the move
  auto back = model->apply(model->calc().inverse(g), *img);
  REQUIRE(back);
  CHECK(*back == base2);
}

TEST_CASE("distance equivariance under the action") {
  auto model = GraphProductModel::build(fp2_spec(4));
  const auto& sys = model->system();
  long checked = 0;
  for (const char* text : {"a1^5027", "a2^-1", "a1^-1 a2"}) {
    Word g = Word::parse(text);
    std::vector<std::optional<Gid>> image(size_t(sys.total()));
    for (Gid e = 0; e < sys.total(); ++e) image[size_t(e)] = model->apply(g, e);
    for (Gid y = 0; y < sys.total(); ++y) {
      if (!image[size_t(y)]) continue;
      for (Gid x = 0; x < sys.total(); ++x)
        for (Gid z = 0; z < sys.total(); ++z) {
          if (x == y || z == y) continue;
          if (!image[size_t(x)] || !image[size_t(z)]) continue;
          auto before = sys.dpi(y, x, z);
          if (!before) continue;
          auto after = sys.dpi(*image[size_t(y)], *image[size_t(x)], *image[size_t(z)]);
          REQUIRE(after);
          CHECK(*after == *before);
          ++checked;
        }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("divergence readings match a hand geodesic") {
  auto model = GraphProductModel::build(fp2_spec(4));
  const auto& sys = model->system();
  Gid base1 = sys.gid({1, 0});
  // offsets 3 and 7 on the same branch are not materialized, so read the
  // projections through loci instead
  Locus x{1, Word::parse("a2^3 a1")};
  Locus z{1, Word::parse("a2^7 a1")};
  (void)base1;
  Gid viewpoint = sys.gid({2, 0});
  CHECK(model->dpi_locus(viewpoint, x, z) == Rational(4));
}

TEST_CASE("flat pairs are inactive exactly when they share the coset") {
  GraphProductSpec spec;
  spec.m = 3;
  spec.edges = {{1, 2}};
  spec.q = 0;
  spec.radius = 4;
  auto model = GraphProductModel::build(spec);
  const auto& sys = model->system();
  Gid b1 = sys.gid({1, 0});
  Gid b2 = sys.gid({2, 0});
  Gid b3 = sys.gid({3, 0});
  CHECK_FALSE(sys.active(b1, b2));  // same flat, commuting conjugates
  CHECK(sys.active(b1, b3));
  CHECK(sys.active(b2, b3));
  CHECK(model->axiom_report().pass());
}

TEST_CASE("square flat gives one element per flat coordinate") {
  GraphProductSpec spec;
  spec.m = 2;
  spec.edges = {{1, 2}};
  spec.q = 0;
  spec.radius = 3;
  auto model = GraphProductModel::build(spec);
  CHECK(model->system().coord_size(1) == 1);
  CHECK(model->system().coord_size(2) == 1);
  CHECK_FALSE(model->system().active(0, 1));
}

TEST_CASE("membership oracle separates the kernel from the rest") {
  auto model = GraphProductModel::build(fp2_spec(4));
  // q-th powers generate the kernel
  CHECK(model->kernel_member(Word::parse("a1^5027")));
  CHECK_FALSE(model->trivial(Word::parse("a1^5027")));
  CHECK_FALSE(model->kernel_member(Word::parse("a1")));
  CHECK(model->kernel_member(Word::parse("a2 a1^5027 a2^-1")));
  // free product: base commutator is not in the kernel
  Word comm = Word::parse("a1 a2 a1^-1 a2^-1");
  CHECK_FALSE(model->kernel_member(comm));
}

TEST_CASE("with a commuting edge the base commutator collapses everywhere") {
  GraphProductSpec spec;
  spec.m = 2;
  spec.edges = {{1, 2}};
  spec.q = 0;
  spec.radius = 3;
  auto model = GraphProductModel::build(spec);
  Word comm = Word::parse("a1^11 a2^11 a1^-11 a2^-11");
  CHECK(model->trivial(comm));
  CHECK(model->kernel_member(comm));
}

TEST_CASE("group and quotient words agree on short words") {
  auto model = GraphProductModel::build(fp2_spec(3));
  // every word of length <= 8 over the group alphabet: trivial in the group
  // exactly when trivial in the quotient, since the kernel has no short
  // nontrivial elements
  std::vector<Word> frontier{Word{}};
  long agree = 0;
  for (int len = 1; len <= 8; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int gen = 1; gen <= 2; ++gen) {
        for (std::int64_t e : {std::int64_t(1), std::int64_t(-1)}) {
          Word u = w;
          u.syl.push_back({gen, e});
          CHECK(model->trivial(u) == model->kernel_member(u));
          ++agree;
          if (len < 8) next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }
  CHECK(agree > 1000);
}

TEST_CASE("model spec files round-trip") {
  auto doc = Json::parse(read_text_file(std::string(COMPRO_FIXTURES_DIR) + "/gp3.json"));
  auto spec = parse_model_spec(doc);
  CHECK(spec.kind == "graph-product");
  CHECK(spec.graph_product.m == 3);
  REQUIRE(spec.graph_product.edges.size() == 1);
  CHECK(spec.graph_product.q == 0);
  auto out = model_spec_json(spec);
  auto spec2 = parse_model_spec(out);
  CHECK(spec2.graph_product.m == spec.graph_product.m);
  CHECK(spec2.graph_product.radius == spec.graph_product.radius);
}

TEST_CASE("generated truncations replay through the table backend") {
  GraphProductSpec spec = fp2_spec(3);
  auto model = GraphProductModel::build(spec);
  Json tables = system_json(model->system());
  auto replay = load_system_json(tables, {});
  CHECK(replay.total() == model->system().total());
  auto rep = check_axioms(replay, Rational(0));
  CHECK(rep.pass());
  for (Gid y = 0; y < replay.total(); ++y)
    for (Gid x = 0; x < replay.total(); ++x)
      for (Gid z = 0; z < replay.total(); ++z) {
        if (y == x || y == z) continue;
        auto a = model->system().dpi(y, x, z);
        auto b = replay.dpi(y, x, z);
        CHECK(a.has_value() == b.has_value());
        if (a && b) CHECK(*a == *b);
      }
}
