#include "core/metrics.hpp"

#include <algorithm>

#include "core/calibrate.hpp"
#include "core/errors.hpp"

namespace compro {

std::vector<std::pair<Gid, Gid>> Metrics::family(Gid x, Gid z) const {
  const auto& sys = *sys_;
  if (x == z) throw usage_error("family needs two distinct elements");
  if (sys.coord_of(x) != sys.coord_of(z))
    throw usage_error("family needs elements of one coordinate");
  const Rational bar = sys.theta() * Rational(2);
  const auto& coord = sys.coordinate(sys.coord_of(x));

  std::vector<std::pair<Gid, Gid>> fam;
  fam.emplace_back(x, z);
  for (Gid zp : coord) {
    if (zp == z) continue;
    auto v = sys.dpi(z, x, zp);
    if (v && *v > bar) fam.emplace_back(x, zp);
  }
  for (Gid xp : coord) {
    if (xp == x) continue;
    auto v = sys.dpi(x, xp, z);
    if (v && *v > bar) fam.emplace_back(xp, z);
  }
  for (Gid xp : coord) {
    if (xp == x) continue;
    for (Gid zp : coord) {
      if (zp == z) continue;
      auto a = sys.dpi(x, xp, zp);
      if (!a || !(*a > bar)) continue;
      auto b = sys.dpi(z, xp, zp);
      if (b && *b > bar) fam.emplace_back(xp, zp);
    }
  }
  return fam;
}

const Metrics::Row* Metrics::dY_row(Gid x, Gid z) const {
  const auto& sys = *sys_;
  std::uint64_t k = std::uint64_t(x) * std::uint64_t(sys.total()) + std::uint64_t(z);
  auto it = rows_.find(k);
  if (it != rows_.end()) return &it->second;

  // the family is symmetric in the pair, so the mirrored row can be reused
  std::uint64_t km = std::uint64_t(z) * std::uint64_t(sys.total()) + std::uint64_t(x);
  auto itm = rows_.find(km);
  if (itm != rows_.end()) return &rows_.emplace(k, itm->second).first->second;

  const auto& coord = sys.coordinate(sys.coord_of(x));
  Row row;
  row.val.assign(coord.size(), Rational(0));
  row.defined.assign(coord.size(), false);
  auto fam = family(x, z);
  Rational zero(0);
  for (size_t yi = 0; yi < coord.size(); ++yi) {
    Gid y = coord[yi];
    if (y == x || y == z) continue;
    bool have = false;
    Rational best;
    for (const auto& [xp, zp] : fam) {
      if (xp == y || zp == y) continue;
      auto v = sys.dpi(y, xp, zp);
      if (!v) continue;
      if (!have || *v < best) {
        best = *v;
        have = true;
      }
      if (have && best == zero) break;  // distances never go below zero
    }
    row.defined[yi] = have;
    if (have) row.val[yi] = best;
  }
  return &rows_.emplace(k, std::move(row)).first->second;
}

std::optional<Rational> Metrics::dY(Gid y, Gid x, Gid z) const {
  const auto& sys = *sys_;
  if (y == x || y == z) throw usage_error("viewpoint coincides with an argument");
  if (x == z) return Rational(0);
  if (sys.coord_of(x) != sys.coord_of(z) || sys.coord_of(y) != sys.coord_of(x))
    throw usage_error("dY needs three elements of one coordinate");

  const Row* row = dY_row(x, z);
  size_t yi = size_t(sys.id(y).index);  // per-coordinate indices are dense
  if (!row->defined[yi]) return std::nullopt;
  return row->val[yi];
}

std::optional<bool> Metrics::d_angle_at_least(Gid y, Gid x, Gid z,
                                              const Rational& level) const {
  const auto& sys = *sys_;
  if (y == x || y == z) return std::nullopt;
  if (!sys.active(y, x) || !sys.active(y, z)) return std::nullopt;
  int cy = sys.coord_of(y);
  bool same = sys.coord_of(x) == cy && sys.coord_of(z) == cy;
  if (!same) {
    if (x == z) return Rational(0) >= level;
    auto v = sys.dpi(y, x, z);
    if (!v) return std::nullopt;
    return *v >= level;
  }
  if (x == z) return Rational(0) >= level;
  if (kappa_hint_) {
    auto raw = sys.dpi(y, x, z);
    if (raw) {
      if (*raw - *kappa_hint_ >= level) return true;
      if (*raw < level) return false;  // the minimum can only shrink
    }
  }
  auto v = dY(y, x, z);
  if (!v) return std::nullopt;
  return *v >= level;
}

std::optional<Rational> Metrics::d_angle(Gid y, Gid x, Gid z) const {
  const auto& sys = *sys_;
  if (y == x || y == z) return std::nullopt;
  if (!sys.active(y, x) || !sys.active(y, z)) return std::nullopt;
  int cy = sys.coord_of(y);
  if (sys.coord_of(x) == cy && sys.coord_of(z) == cy) return dY(y, x, z);
  if (x == z) return Rational(0);
  return sys.dpi(y, x, z);
}

std::vector<Gid> Metrics::y_set(int j, const Rational& level, Gid x, Gid z,
                                const Ladder* ladder) const {
  const auto& sys = *sys_;
  if (!(level > Rational(0))) throw usage_error("interval level must be positive");
  std::vector<Gid> out;
  for (Gid y : sys.coordinate(j)) {
    if (y == x || y == z) continue;
    if (!sys.active(y, x) || !sys.active(y, z)) continue;
    auto in = d_angle_at_least(y, x, z, level);
    if (in && *in) out.push_back(y);
  }
  if (ladder && level >= ladder->Theta && sys.coord_of(x) == j && sys.coord_of(z) == j) {
    auto res = standard_order(*this, x, z, out, ladder->kappa);
    if (res.ok) {
      out.assign(res.order.begin() + 1, res.order.end() - 1);
    }
  }
  return out;
}

std::vector<Gid> Metrics::y_set_same_coord(const Rational& level, Gid x, Gid z) const {
  const auto& sys = *sys_;
  std::vector<Gid> out;
  if (x == z) return out;
  for (Gid y : sys.coordinate(sys.coord_of(x))) {
    if (y == x || y == z) continue;
    auto v = dY(y, x, z);
    if (v && *v >= level) out.push_back(y);
  }
  return out;
}

OrderResult standard_order(const Metrics& mx, Gid x, Gid z,
                           const std::vector<Gid>& interior, const Rational& kappa) {
  OrderResult res;
  auto before = [&](Gid a, Gid b) -> std::optional<bool> {
    auto v = mx.dY(a, x, b);
    if (!v) return std::nullopt;
    return *v > kappa;
  };

  // totality: exactly one direction per pair
  for (size_t i = 0; i < interior.size(); ++i) {
    for (size_t j = i + 1; j < interior.size(); ++j) {
      auto ab = before(interior[i], interior[j]);
      auto ba = before(interior[j], interior[i]);
      bool fwd = ab && *ab;
      bool bwd = ba && *ba;
      if (fwd == bwd) {
        res.ok = false;
        res.offender = {interior[i], interior[j]};
        res.diagnostic = std::string("comparator not total on pair ") +
                         mx.system().id(interior[i]).label() + "," +
                         mx.system().id(interior[j]).label() +
                         (fwd ? " (both directions)" : " (neither direction)");
        return res;
      }
    }
  }

  std::vector<Gid> sorted = interior;
  std::sort(sorted.begin(), sorted.end(), [&](Gid a, Gid b) {
    auto ab = before(a, b);
    return ab && *ab;
  });
  // sort assumes transitivity; verify the result is actually consistent
  for (size_t i = 0; i < sorted.size(); ++i) {
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      auto ab = before(sorted[i], sorted[j]);
      if (!(ab && *ab)) {
        res.ok = false;
        res.offender = {sorted[i], sorted[j]};
        res.diagnostic = "comparator not transitive on slice";
        return res;
      }
    }
  }

  // the two chain inequalities, endpoints included as extremes
  std::vector<Gid> chain;
  chain.push_back(x);
  chain.insert(chain.end(), sorted.begin(), sorted.end());
  chain.push_back(z);
  auto dv = [&](Gid y, Gid a, Gid b) { return mx.dY(y, a, b); };
  for (size_t i0 = 0; i0 < chain.size(); ++i0) {
    for (size_t i1 = i0 + 1; i1 < chain.size(); ++i1) {
      for (size_t i2 = i1 + 1; i2 < chain.size(); ++i2) {
        Gid y0 = chain[i0], y1 = chain[i1], y2 = chain[i2];
        if (y1 != x && y1 != z && y0 != y1 && y2 != y1) {
          auto mid = dv(y1, y0, y2);
          auto full = dv(y1, x, z);
          if (mid && full &&
              (!(*mid <= *full) || !(*mid >= *full - kappa))) {
            res.ok = false;
            res.offender = {y0, y2};
            res.diagnostic = "middle-view inequality fails at " +
                             mx.system().id(y1).label();
            return res;
          }
        }
        if (y0 != x && y0 != z && y1 != y0 && y2 != y0) {
          auto v = dv(y0, y1, y2);
          if (v && !(*v <= kappa)) {
            res.ok = false;
            res.offender = {y1, y2};
            res.diagnostic = "low-end view exceeds kappa at " +
                             mx.system().id(y0).label();
            return res;
          }
        }
        if (y2 != x && y2 != z && y0 != y2 && y1 != y2) {
          auto v = dv(y2, y1, y0);
          if (v && !(*v <= kappa)) {
            res.ok = false;
            res.offender = {y0, y1};
            res.diagnostic = "high-end view exceeds kappa at " +
                             mx.system().id(y2).label();
            return res;
          }
        }
      }
    }
  }

  res.ok = true;
  res.order = std::move(chain);
  return res;
}

}  // namespace compro
