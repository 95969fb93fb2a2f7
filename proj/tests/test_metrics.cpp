#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/calibrate.hpp"
#include "core/complex.hpp"
#include "core/errors.hpp"
#include "core/json_io.hpp"
#include "core/metrics.hpp"
#include "oracles.hpp"

using namespace compro;

namespace {

CompositeSystem p11() {
  return load_system_json(Json::parse(read_text_file(std::string(COMPRO_FIXTURES_DIR) + "/p11.json")), {});
}

// element names for readability: A=(1,0) B=(1,1) Y=(1,2) Z=(1,3)
constexpr int A = 0, B = 1, Y = 2, Z = 3;

}  // namespace

TEST_CASE("the pair itself always stabilizes") {
  auto sys = p11();
  Metrics mx(sys);
  auto fam = mx.family(A, B);
  CHECK(std::find(fam.begin(), fam.end(), std::make_pair(Gid(A), Gid(B))) != fam.end());
}

TEST_CASE("family matches the brute-force enumeration on p11") {
  auto sys = p11();
  Metrics mx(sys);
  for (Gid x = 0; x < 4; ++x)
    for (Gid z = 0; z < 4; ++z) {
      if (x == z) continue;
      auto got = mx.family(x, z);
      auto want = oracle::family(sys, x, z);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  // point segments see nothing, so the family of (A,B) is the bare pair
  CHECK(mx.family(A, B).size() == 1);
}

TEST_CASE("modified distance agrees with the oracle and the frozen values") {
  auto sys = p11();
  Metrics mx(sys);
  for (Gid y = 0; y < 4; ++y)
    for (Gid x = 0; x < 4; ++x)
      for (Gid z = 0; z < 4; ++z) {
        if (x == y || z == y || x == z) continue;
        auto got = mx.dY(y, x, z);
        auto want = oracle::dY(sys, y, x, z);
        CHECK(got.has_value() == want.has_value());
        if (got && want) CHECK(*got == *want);
        // the modification never exceeds the raw distance
        auto raw = sys.dpi(y, x, z);
        if (got && raw) CHECK(*got <= *raw);
      }
  CHECK(*mx.dY(Y, A, B) == Rational(2));
  CHECK(*mx.dY(Y, B, Z) == Rational(2));
  CHECK(*mx.dY(Z, A, B) == Rational(0));
  CHECK(mx.dY(Y, A, A).has_value());
  CHECK(*mx.dY(Y, A, A) == Rational(0));
  CHECK_THROWS_AS(mx.dY(Y, Y, A), usage_error);
}

TEST_CASE("dispatch uses the modified distance only on coordinate mates") {
  auto sys = p11();
  Metrics mx(sys);
  CHECK(*mx.d_angle(Y, A, B) == *mx.dY(Y, A, B));
  CHECK_FALSE(mx.d_angle(Y, Y, A).has_value());
}

TEST_CASE("interval sets scan the declared level") {
  auto sys = p11();
  Metrics mx(sys);
  auto s1 = mx.y_set(1, Rational(1), A, B);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == Gid(Y));
  CHECK(mx.y_set(1, Rational(3), A, B).empty());
  CHECK_THROWS_AS(mx.y_set(1, Rational(0), A, B), usage_error);
}

TEST_CASE("interval sets are anti-monotone in the level") {
  auto sys = p11();
  Metrics mx(sys);
  for (Gid x = 0; x < 4; ++x)
    for (Gid z = 0; z < 4; ++z) {
      if (x == z) continue;
      auto lo = mx.y_set(1, Rational(1), x, z);
      auto hi = mx.y_set(1, Rational(2), x, z);
      for (Gid g : hi) CHECK(std::find(lo.begin(), lo.end(), g) != lo.end());
    }
}

TEST_CASE("band fast path agrees with the exact decision") {
  auto sys = p11();
  Metrics plain(sys);
  Metrics hinted(sys);
  hinted.set_kappa_hint(Rational(0));  // exact on tree tables
  for (Gid y = 0; y < 4; ++y)
    for (Gid x = 0; x < 4; ++x)
      for (Gid z = 0; z < 4; ++z) {
        if (x == y || z == y) continue;
        for (int lvl = 1; lvl <= 3; ++lvl) {
          auto a = plain.d_angle_at_least(y, x, z, Rational(lvl));
          auto b = hinted.d_angle_at_least(y, x, z, Rational(lvl));
          CHECK(a.has_value() == b.has_value());
          if (a && b) CHECK(*a == *b);
        }
      }
}

TEST_CASE("standard order realizes the geodesic order on p11") {
  auto sys = p11();
  Metrics mx(sys);
  auto res = standard_order(mx, A, B, {Y}, Rational(0));
  REQUIRE(res.ok);
  REQUIRE(res.order.size() == 3);
  CHECK(res.order[0] == Gid(A));
  CHECK(res.order[1] == Gid(Y));
  CHECK(res.order[2] == Gid(B));

  // with Z included the comparator cannot separate: Z sees nothing
  auto bad = standard_order(mx, A, B, {Y, Z}, Rational(0));
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostic.find("not total") != std::string::npos);
}

TEST_CASE("empty slice orders as the bare endpoints") {
  auto sys = p11();
  Metrics mx(sys);
  auto res = standard_order(mx, A, Z, {}, Rational(0));
  REQUIRE(res.ok);
  REQUIRE(res.order.size() == 2);
  CHECK(res.order[0] == Gid(A));
  CHECK(res.order[1] == Gid(Z));
}

TEST_CASE("calibration lands on the frozen ladder for p11") {
  auto sys = p11();
  Metrics mx(sys);
  auto cal = calibrate_constants(mx);
  REQUIRE(cal.ok);
  CHECK(cal.ladder.kappa == Rational(0));
  CHECK(cal.ladder.Theta == Rational(1));
  CHECK(cal.ladder.c_star == Rational(1001));
  CHECK(cal.ladder.Theta_P == Rational(1001));
  CHECK(cal.ladder.Theta_Rot == Rational(4025));
  CHECK(cal.ladder.K == Rational(1002));
  REQUIRE(cal.ladder.L.size() == 1);
  CHECK(cal.ladder.L[0] == Rational(1001));
  CHECK(verify_bbf_properties(mx, cal.ladder.kappa, cal.ladder.Theta).empty());
}

TEST_CASE("empty system calibrates to the theta floor") {
  CompositeSystem sys(2, Rational(3));
  sys.seal();
  Metrics mx(sys);
  auto cal = calibrate_constants(mx);
  REQUIRE(cal.ok);
  CHECK(cal.ladder.kappa == Rational(3));
  CHECK(cal.ladder.Theta == Rational(3));
  CHECK(cal.ladder.c_star == Rational(6001));
}

TEST_CASE("ladder tuple shifts peak at the requested coordinate") {
  Ladder l;
  l.theta = Rational(0);
  l.kappa = Rational(2);
  l.Theta = Rational(5);
  l.derive(3);
  // base tuple descends to c_star
  CHECK(l.L[0] == l.c_star + Rational(80));
  CHECK(l.L[2] == l.c_star);
  for (int j = 1; j <= 3; ++j) {
    const auto& t = l.shifted(j);
    CHECK(t[size_t(j - 1)] == l.L[0]);
    int low = (j + 1) % 3 + 1;  // coordinate j-1 cyclically
    CHECK(t[size_t(low - 1)] == l.c_star);
  }
  l.validate(3);
}

TEST_CASE("projection complex on p11 at K=1 matches the edge oracle") {
  auto sys = p11();
  Metrics mx(sys);
  auto pc = build_projection_complex(mx, 1, Rational(1));
  // edges hold exactly when no third element reaches the threshold
  for (Gid a = 0; a < 4; ++a)
    for (Gid b = a + 1; b < 4; ++b) {
      bool blocked = false;
      for (Gid y = 0; y < 4; ++y) {
        if (y == a || y == b) continue;
        auto v = oracle::dY(sys, y, a, b);
        if (v && *v >= Rational(1)) blocked = true;
      }
      CHECK(pc.has_edge(a, b) == !blocked);
    }
  CHECK_FALSE(pc.has_edge(A, B));  // the middle segment witnesses the gap
  CHECK_FALSE(pc.has_edge(Z, B));
  CHECK(pc.has_edge(A, Y));
  CHECK(pc.has_edge(A, Z));
  CHECK(pc.has_edge(Y, Z));
  CHECK(pc.has_edge(Y, B));
  CHECK(pc.connected);
}

TEST_CASE("complete graph once K clears every distance") {
  auto sys = p11();
  Metrics mx(sys);
  auto pc = build_projection_complex(mx, 1, Rational(50));
  CHECK(pc.edges.size() == 6);  // all pairs
}

TEST_CASE("edge sets only grow as K rises") {
  auto sys = p11();
  Metrics mx(sys);
  auto lo = build_projection_complex(mx, 1, Rational(1));
  auto hi = build_projection_complex(mx, 1, Rational(2));
  for (const auto& e : lo.edges)
    CHECK(std::find(hi.edges.begin(), hi.edges.end(), e) != hi.edges.end());
}

TEST_CASE("dot export is stable and labeled") {
  auto sys = p11();
  Metrics mx(sys);
  auto pc = build_projection_complex(mx, 1, Rational(1));
  auto dot = complex_dot(sys, pc);
  CHECK(dot == complex_dot(sys, pc));
  CHECK(dot.find("\"c1_0\"") != std::string::npos);
  CHECK(dot.find("graph") == 0);
}
