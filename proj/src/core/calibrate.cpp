#include "core/calibrate.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace compro {

void Ladder::derive(int m) {
  c_star = Rational(1000) * (Theta + kappa) + Rational(1);
  Theta_P = c_star + Rational(21) * Rational(m) * kappa;
  Theta_Rot = Rational(2) * c_star + Rational(2) * Theta_P +
              Rational(20) * (kappa + Theta) + Rational(1);
  K = Theta_P + Rational(1);
  L.clear();
  for (int r = 1; r <= m; ++r)
    L.push_back(c_star + Rational(20) * Rational(m - r) * kappa);
  Lj.assign(size_t(m), {});
  for (int j = 1; j <= m; ++j) {
    auto& t = Lj[size_t(j - 1)];
    t.assign(size_t(m), Rational(0));
    for (int i = 1; i <= m; ++i) {
      int r = ((i - j) % m + m) % m + 1;  // so that t[j] = L[1] is the maximum
      t[size_t(i - 1)] = L[size_t(r - 1)];
    }
  }
}

void Ladder::validate(int m) const {
  auto fail = [](const std::string& s) { throw usage_error("ladder invalid: " + s); };
  if (kappa < theta) fail("kappa below theta");
  if (!(c_star > Rational(1000) * (Theta + kappa))) fail("c_star rung");
  if (!(Theta_P == c_star + Rational(21) * Rational(m) * kappa)) fail("Theta_P rung");
  if (!(Theta_Rot > Rational(2) * c_star + Rational(2) * Theta_P +
                    Rational(20) * (kappa + Theta)))
    fail("Theta_Rot rung");
  if (!(K > Theta_P)) fail("K rung");
  if (L.size() != size_t(m)) fail("tuple size");
  Rational mx = L.front();
  for (const auto& v : L) mx = max(mx, v);
  if (!(mx <= Theta_P - kappa)) fail("tuple maximum above Theta_P - kappa");
}

namespace {

struct Accumulator {
  bool any = false;
  Rational value;
  void feed(const Rational& v) {
    if (!any || value < v) value = v;
    any = true;
  }
};

// Largest slack needed so that d^pi - kappa <= d <= d^pi, the coarse
// triangle inequality, and the Behrstock inequality all hold. Loops keep
// the viewpoint innermost so each pair row is fetched once.
Accumulator kappa_floor(const Metrics& mx) {
  const auto& sys = mx.system();
  Accumulator acc;
  for (int c = 1; c <= sys.m(); ++c) {
    const auto& coord = sys.coordinate(c);
    for (Gid x : coord)
      for (Gid z : coord) {
        if (x == z) continue;
        const auto& rxz = mx.pair_row(x, z);
        for (size_t yi = 0; yi < coord.size(); ++yi) {
          Gid y = coord[yi];
          if (y == x || y == z || !rxz.defined[yi]) continue;
          auto dpi = sys.dpi(y, x, z);
          if (dpi) acc.feed(*dpi - rxz.val[yi]);
          // Behrstock on the derived distances
          auto other = mx.dY(x, y, z);
          if (other) acc.feed(min(rxz.val[yi], *other));
        }
        // coarse triangle: d_Y(X,Z) + d_Y(Z,W) >= d_Y(X,W) - kappa
        for (Gid w : coord) {
          if (w == x || w == z) continue;
          const auto& rzw = mx.pair_row(z, w);
          const auto& rxw = mx.pair_row(x, w);
          for (size_t yi = 0; yi < coord.size(); ++yi) {
            Gid y = coord[yi];
            if (y == x || y == z || y == w) continue;
            if (!rxz.defined[yi] || !rzw.defined[yi] || !rxw.defined[yi]) continue;
            acc.feed(rxw.val[yi] - rxz.val[yi] - rzw.val[yi]);
          }
        }
      }
  }
  return acc;
}

// Levels at which monotonicity is violated: Theta must exceed all of them.
Accumulator monotonicity_ceiling(const Metrics& mx) {
  const auto& sys = mx.system();
  Accumulator acc;
  for (int c = 1; c <= sys.m(); ++c) {
    const auto& coord = sys.coordinate(c);
    for (Gid x : coord)
      for (Gid z : coord) {
        if (x == z) continue;
        const auto& rxz = mx.pair_row(x, z);
        for (Gid y : coord) {
          if (y == x || y == z) continue;
          size_t yidx = size_t(sys.id(y).index);
          if (!rxz.defined[yidx]) continue;
          const Rational& lvl = rxz.val[yidx];
          const auto& rxy = mx.pair_row(x, y);
          const auto& rzy = mx.pair_row(z, y);
          for (size_t wi = 0; wi < coord.size(); ++wi) {
            Gid w = coord[wi];
            if (w == y || w == x || w == z || !rxz.defined[wi]) continue;
            const Rational& xz = rxz.val[wi];
            bool bad = (rxy.defined[wi] && !(rxy.val[wi] <= xz)) ||
                       (rzy.defined[wi] && !(rzy.val[wi] <= xz));
            if (bad) acc.feed(lvl);
          }
        }
      }
  }
  return acc;
}

// Levels at which the slice order breaks (non-total comparator or failed
// chain inequality): Theta must exceed all of them.
Accumulator order_ceiling(const Metrics& mx, const Rational& kappa) {
  const auto& sys = mx.system();
  Accumulator acc;
  for (int c = 1; c <= sys.m(); ++c) {
    const auto& coord = sys.coordinate(c);
    for (Gid x : coord)
      for (Gid z : coord) {
        if (x == z) continue;
        // distinct levels, descending; find where the slice stops ordering
        const auto& rxz = mx.pair_row(x, z);
        std::vector<std::pair<Rational, Gid>> lv;
        for (size_t yi = 0; yi < coord.size(); ++yi) {
          Gid y = coord[yi];
          if (y == x || y == z || !rxz.defined[yi]) continue;
          lv.emplace_back(rxz.val[yi], y);
        }
        std::sort(lv.begin(), lv.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<Gid> slice;
        size_t i = 0;
        while (i < lv.size()) {
          size_t j = i;
          while (j < lv.size() && lv[j].first == lv[i].first) {
            slice.push_back(lv[j].second);
            ++j;
          }
          auto res = standard_order(mx, x, z, slice, kappa);
          if (!res.ok) {
            acc.feed(lv[i].first);
            break;
          }
          i = j;
        }
      }
  }
  return acc;
}

}  // namespace

std::vector<std::string> verify_bbf_properties(const Metrics& mx, const Rational& kappa,
                                               const Rational& Theta, std::string* witness) {
  const auto& sys = mx.system();
  std::vector<std::string> bad;
  auto note = [&](const std::string& name, const std::string& w) {
    if (std::find(bad.begin(), bad.end(), name) == bad.end()) bad.push_back(name);
    if (witness && witness->empty()) *witness = name + ": " + w;
  };

  for (int c = 1; c <= sys.m(); ++c) {
    const auto& coord = sys.coordinate(c);
    for (Gid x : coord)
      for (Gid z : coord) {
        if (x == z) continue;
        const auto& rxz = mx.pair_row(x, z);
        const auto& rzx = mx.pair_row(z, x);
        for (size_t yi = 0; yi < coord.size(); ++yi) {
          Gid y = coord[yi];
          if (y == x || y == z || !rxz.defined[yi]) continue;
          const Rational& d = rxz.val[yi];
          if (rzx.defined[yi] && !(d == rzx.val[yi])) note("symmetry", sys.id(y).label());
          auto dpi = sys.dpi(y, x, z);
          if (dpi && (!(d <= *dpi) || !(*dpi - kappa <= d)))
            note("coarse-equality", sys.id(y).label());
          auto other = mx.dY(x, y, z);
          if (other && !(min(d, *other) <= kappa))
            note("behrstock", sys.id(y).label() + "," + sys.id(x).label() + "," +
                                  sys.id(z).label());
        }
        // coarse triangle legs through every fourth element
        for (Gid w : coord) {
          if (w == x || w == z) continue;
          const auto& rzw = mx.pair_row(z, w);
          const auto& rxw = mx.pair_row(x, w);
          for (size_t yi = 0; yi < coord.size(); ++yi) {
            Gid y = coord[yi];
            if (y == x || y == z || y == w) continue;
            if (!rxz.defined[yi] || !rzw.defined[yi] || !rxw.defined[yi]) continue;
            if (!(rxz.val[yi] + rzw.val[yi] >= rxw.val[yi] - kappa))
              note("coarse-triangle", sys.id(y).label());
          }
        }
      }
  }

  auto mono = monotonicity_ceiling(mx);
  if (mono.any && mono.value >= Theta) note("monotonicity", mono.value.str());
  auto ord = order_ceiling(mx, kappa);
  if (ord.any && ord.value >= Theta) note("order", ord.value.str());
  // properness is automatic on a finite instance but kept for the record
  return bad;
}

CalibrationResult calibrate_constants(const Metrics& mx) {
  const auto& sys = mx.system();
  CalibrationResult res;
  res.ladder.theta = sys.theta();

  Rational kappa = sys.theta();
  auto kf = kappa_floor(mx);
  if (kf.any && kf.value > kappa) {
    kappa = kf.value;
    res.binding.push_back("kappa: coarse-equality/triangle/behrstock");
  }

  Rational Theta = max(sys.theta(), kappa);
  bool moved = true;
  int rounds = 0;
  while (moved && rounds++ < 8) {
    moved = false;
    auto mono = monotonicity_ceiling(mx);
    if (mono.any && mono.value + Rational(1) > Theta) {
      Theta = mono.value + Rational(1);
      res.binding.push_back("Theta: monotonicity at " + mono.value.str());
      moved = true;
    }
    auto ord = order_ceiling(mx, kappa);
    if (ord.any && ord.value + Rational(1) > Theta) {
      Theta = ord.value + Rational(1);
      res.binding.push_back("Theta: order at " + ord.value.str());
      moved = true;
    }
  }

  res.ladder.kappa = kappa;
  res.ladder.Theta = Theta;
  res.ladder.derive(sys.m());
  res.ladder.validate(sys.m());

  std::string witness;
  auto bad = verify_bbf_properties(mx, kappa, Theta, &witness);
  if (!bad.empty()) {
    res.ok = false;
    res.failure = "property '" + bad.front() + "' unsatisfied, witness " + witness;
    return res;
  }
  res.ok = true;
  if (res.binding.empty()) res.binding.push_back("none (theta floor)");
  return res;
}

}  // namespace compro
