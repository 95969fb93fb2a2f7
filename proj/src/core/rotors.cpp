#include "core/rotors.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace compro {

namespace {
constexpr size_t kWitnessCap = 8;
}

void CheckStat::merge(const CheckStat& o) {
  pass_count += o.pass_count;
  fail_count += o.fail_count;
  inconclusive += o.inconclusive;
  for (const auto& w : o.witnesses)
    if (witnesses.size() < kWitnessCap) witnesses.push_back(w);
}

void CheckStat::fail(const std::string& w) {
  ++fail_count;
  if (witnesses.size() < kWitnessCap) witnesses.push_back(w);
}

FamilyReport verify_rotating_family(const GraphProductModel& model,
                                    const RotorOptions& opt) {
  const auto& sys = model.system();
  const auto& mx = model.metrics();
  const auto& calc = model.calc();
  const Ladder& ladder = model.ladder();
  FamilyReport rep;

  // (a) conjugation coherence: the rotation group travels with the element
  {
    std::vector<Word> conjugators;
    for (Gid g = 0; g < sys.total() && conjugators.size() < opt.conjugator_samples / 2;
         g += std::max(1, sys.total() / 8))
      conjugators.push_back(model.rotation(g));
    // a few short products for non-generator conjugators
    size_t base = conjugators.size();
    for (size_t i = 0; i + 1 < base && conjugators.size() < opt.conjugator_samples; ++i)
      conjugators.push_back(calc.mul(conjugators[i], conjugators[i + 1]));

    for (const auto& g : conjugators) {
      for (Gid x = 0; x < sys.total(); x += std::max(1, sys.total() / 12)) {
        auto gx = model.apply(g, x);
        if (!gx) {
          ++rep.conjugation.inconclusive;
          continue;
        }
        Word expect = calc.conjugate(g, model.rotation(x));
        Word got = model.rotation(*gx);
        if (calc.trivial(calc.mul(calc.inverse(got), expect)))
          ++rep.conjugation.pass_count;
        else
          rep.conjugation.fail("rotation of " + sys.id(*gx).label() +
                               " is not the conjugated rotation of " +
                               sys.id(x).label());
      }
    }
  }

  // (b) commutation across inactive pairs, by normal-form comparison
  for (Gid a = 0; a < sys.total(); ++a)
    for (Gid b = a + 1; b < sys.total(); ++b) {
      if (sys.active(a, b)) continue;
      if (calc.commute_elements(model.rotation(a), model.rotation(b)))
        ++rep.commutation.pass_count;
      else
        rep.commutation.fail("inactive pair " + sys.id(a).label() + "," +
                             sys.id(b).label() + " fails to commute");
    }

  // (c) rotation strength: inside the close band, every nontrivial rotation
  // throws the pair beyond Theta_Rot. Band decisions run off d^pi with the
  // verified kappa, falling back to the exact minimum in the ambiguous zone.
  const Rational& TP = ladder.Theta_P;
  const Rational& TR = ladder.Theta_Rot;
  const Rational& kp = ladder.kappa;
  for (int c = 1; c <= sys.m(); ++c) {
    const auto& coord = sys.coordinate(c);
    for (Gid y : coord) {
      for (Gid x : coord) {
        if (x == y) continue;
        for (Gid z : coord) {
          if (z == y) continue;
          // hypothesis d_Y(X,Z) <= Theta_P (d_Y(X,X) = 0 qualifies)
          bool hyp;
          if (x == z) {
            hyp = Rational(0) <= TP;
          } else {
            auto raw = sys.dpi(y, x, z);
            if (!raw) continue;
            if (*raw <= TP) hyp = true;
            else if (*raw - kp > TP) hyp = false;
            else {
              auto exact = mx.dY(y, x, z);
              hyp = exact && *exact <= TP;
            }
          }
          if (!hyp) continue;
          for (std::int64_t k = -opt.exponent_budget; k <= opt.exponent_budget; ++k) {
            if (k == 0) continue;
            Word g = model.rotation(y, k);
            auto gz = model.apply(g, z);
            Rational moved;
            if (gz) {
              if (*gz == y) {
                rep.rotation_bound.fail("rotation maps " + sys.id(z).label() +
                                        " onto the center " + sys.id(y).label());
                continue;
              }
              auto raw = sys.dpi(y, x, *gz);
              if (!raw) {
                ++rep.rotation_bound.inconclusive;
                continue;
              }
              moved = *raw;
            } else {
              // off-truncation image: the raw distance is still exact via
              // the divergence formula
              Locus img = model.apply_locus(g, model.locus(z));
              moved = model.dpi_locus(y, model.locus(x), img);
            }
            bool pass;
            if (moved - kp >= TR) {
              pass = true;
            } else if (moved < TR) {
              pass = false;  // the minimum only shrinks below the raw value
            } else if (gz) {
              auto exact = mx.dY(y, x, *gz);
              pass = exact && *exact >= TR;
            } else {
              ++rep.rotation_bound.inconclusive;
              continue;
            }
            if (pass)
              ++rep.rotation_bound.pass_count;
            else
              rep.rotation_bound.fail(
                  "pair (" + sys.id(x).label() + "," + sys.id(z).label() +
                  ") at center " + sys.id(y).label() + " moved only " + moved.str() +
                  " under exponent " + std::to_string(k));
          }
        }
      }
    }
  }

  // (d) rotations fix everything outside the active set and preserve the
  // distances measured there
  for (Gid y = 0; y < sys.total(); ++y) {
    Word g = model.rotation(y);
    for (Gid w = 0; w < sys.total(); ++w) {
      if (w == y || sys.active(y, w)) continue;
      auto img = model.apply(g, w);
      if (!img) {
        ++rep.fixes_inactive.inconclusive;
        continue;
      }
      if (*img != w) {
        rep.fixes_inactive.fail("rotation of " + sys.id(y).label() + " moves inactive " +
                                sys.id(w).label());
        continue;
      }
      ++rep.fixes_inactive.pass_count;
    }
  }
  // distance preservation at inactive viewpoints, sampled pairs
  for (Gid y = 0; y < sys.total(); y += std::max(1, sys.total() / 8)) {
    Word g = model.rotation(y);
    for (Gid w = 0; w < sys.total(); w += std::max(1, sys.total() / 8)) {
      if (w == y || sys.active(y, w)) continue;
      auto acts = sys.act_set(w);
      for (size_t i = 0; i < acts.size(); i += std::max<size_t>(1, acts.size() / 6)) {
        for (size_t j = i + 1; j < acts.size(); j += std::max<size_t>(1, acts.size() / 6)) {
          Gid a = acts[i], b = acts[j];
          if (a == w || b == w) continue;
          auto before = sys.dpi(w, a, b);
          auto ga = model.apply(g, a);
          auto gb = model.apply(g, b);
          if (!before || !ga || !gb) {
            ++rep.fixes_inactive.inconclusive;
            continue;
          }
          auto after = sys.dpi(w, *ga, *gb);
          if (after && *after == *before)
            ++rep.fixes_inactive.pass_count;
          else
            rep.fixes_inactive.fail("rotation of " + sys.id(y).label() +
                                    " disturbs the view from inactive " +
                                    sys.id(w).label());
        }
      }
    }
  }

  return rep;
}

IsotropyWindow proper_isotropy_window(const GraphProductModel& model, Gid x,
                                      const Rational& N) {
  IsotropyWindow win;
  Rational step = model.spec().weight * Rational(model.q());
  // |k| <= N / (D*q); displacement of any active element under the k-th
  // lattice power is exactly D*q*|k|
  std::int64_t k = 0;
  while (Rational(k + 1) * step <= N) ++k;
  for (std::int64_t i = -k; i <= k; ++i) win.exponents.push_back(i);

  // cross-check by direct evaluation on the truncation
  const auto& sys = model.system();
  for (std::int64_t i = 1; i <= k + 1; ++i) {
    Word g = model.rotation(x, i);
    bool within = false;
    bool saw_any = false;
    for (Gid y : sys.act_set(x)) {
      if (y == x) continue;
      auto img = model.apply(g, y);
      if (!img) continue;
      saw_any = true;
      auto d = sys.dpi(x, y, *img);
      if (d && *d <= N) {
        within = true;
        break;
      }
    }
    if (!saw_any) {
      win.budget_limited = true;
      break;
    }
    bool claimed = i <= k;
    if (within != claimed)
      throw contradiction_error("isotropy window disagrees with direct displacement at exponent " +
                                std::to_string(i));
  }
  return win;
}

TransferResult transfer(const GraphProductModel& model, Gid y, Gid x, const Locus& xp,
                        const RotorOptions& opt) {
  const auto& sys = model.system();
  const Ladder& ladder = model.ladder();
  TransferResult res;
  if (!sys.active(y, x)) throw usage_error("transfer needs Y active for X");
  if (!model.active_locus(y, xp) && !model.active_locus(x, xp))
    throw usage_error("transfer needs X' active for Y or for X");

  auto small = proper_isotropy_window(model, x, Rational(10) * ladder.kappa);
  std::int64_t floor = small.exponents.empty()
                           ? 1
                           : small.exponents.back() + 1;  // first exponent outside F

  auto close_enough = [&](const Locus& cand) -> bool {
    if (!model.active_locus(y, cand)) return false;
    Rational d = model.dpi_locus(y, cand, model.locus(x));
    return d <= ladder.kappa;
  };

  for (std::int64_t mag = floor; mag <= floor + opt.exponent_budget; ++mag) {
    for (std::int64_t k : {mag, -mag}) {
      Word g = model.rotation(x, k);
      if (close_enough(xp)) {
        res.ok = true;
        res.exponent = k;
        res.image = xp;
        res.used_rotated = false;
        return res;
      }
      Locus moved = model.apply_locus(g, xp);
      if (close_enough(moved)) {
        res.ok = true;
        res.exponent = k;
        res.image = moved;
        res.used_rotated = true;
        return res;
      }
    }
  }
  res.diagnostic = "no rotation within budget brings the transfer close";
  return res;
}

InducedOrderResult induced_order(const GraphProductModel& model, Gid x, Gid z, int coord,
                                 const Rational& level, const RotorOptions& opt) {
  (void)opt;
  const auto& sys = model.system();
  const auto& mx = model.metrics();
  const Ladder& ladder = model.ladder();
  InducedOrderResult res;
  if (!sys.active(x, z)) throw usage_error("induced order needs active endpoints");
  Rational floor = ladder.Theta + Rational(12) * ladder.kappa;
  if (level < floor)
    throw usage_error("induced order level below Theta + 12*kappa");

  auto slice = mx.y_set(coord, level, x, z);
  if (slice.empty()) {
    res.ok = true;
    return res;
  }

  // anchors in the target coordinate, active for the respective endpoint
  auto pick_anchor = [&](Gid at, int skip) -> std::optional<Gid> {
    int found = 0;
    for (Gid g : sys.coordinate(coord)) {
      if (g == at || !sys.active(g, at)) continue;
      if (found++ == skip) return g;
    }
    return std::nullopt;
  };

  Rational inner_level = level - Rational(4) * ladder.kappa;
  std::vector<std::vector<Gid>> runs;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto xa = pick_anchor(x, attempt);
    auto za = pick_anchor(z, attempt);
    if (!xa || !za) {
      res.diagnostic = "no anchor available in the coordinate";
      return res;
    }
    std::vector<Gid> ordered;
    bool got = false;
    for (std::int64_t mag = 1; mag <= 3 && !got; ++mag) {
      for (std::int64_t kx : {mag, -mag}) {
        for (std::int64_t kz : {mag, -mag}) {
          auto gx = model.apply(model.rotation(x, kx), *xa);
          auto gz = model.apply(model.rotation(z, kz), *za);
          if (!gx || !gz || *gx == *gz) continue;
          auto wide = mx.y_set(coord, inner_level, *gx, *gz);
          bool covers = std::all_of(slice.begin(), slice.end(), [&](Gid s) {
            return s == *gx || s == *gz ||
                   std::find(wide.begin(), wide.end(), s) != wide.end();
          });
          if (!covers) continue;
          auto ord = standard_order(mx, *gx, *gz, wide, ladder.kappa);
          if (!ord.ok) continue;
          // restrict to the requested slice
          ordered.clear();
          for (Gid g : ord.order)
            if (std::find(slice.begin(), slice.end(), g) != slice.end())
              ordered.push_back(g);
          if (ordered.size() == slice.size()) {
            got = true;
            break;
          }
        }
        if (got) break;
      }
    }
    if (!got) {
      res.diagnostic = "no rotated anchors order the slice within budget";
      return res;
    }
    runs.push_back(ordered);
  }

  if (runs[0] != runs[1]) {
    std::reverse(runs[1].begin(), runs[1].end());
    if (runs[0] != runs[1]) {
      res.diagnostic = "two independent anchor choices disagree";
      return res;
    }
  }
  res.ok = true;
  res.order = runs[0];
  return res;
}

EllipticityResult check_ellipticity(const GraphProductModel& model, Gid x, int coord,
                                    const Rational& K) {
  const auto& sys = model.system();
  const auto& mx = model.metrics();
  const Ladder& ladder = model.ladder();
  EllipticityResult res;
  if (!(K > Rational(2) * ladder.Theta + ladder.kappa))
    throw usage_error("ellipticity needs K above 2*Theta + kappa");

  Rational k0 = (K - ladder.kappa) / Rational(2);
  for (Gid z : sys.coordinate(coord)) {
    if (z == x) continue;
    if (!sys.active(x, z)) {
      // fixed by the whole stabilizer: belongs to the invariant set
      res.invariant_set.push_back(z);
      continue;
    }
    if (mx.y_set(coord, k0, x, z).empty()) res.invariant_set.push_back(z);
  }
  if (sys.coord_of(x) == coord) {
    res.ok = true;  // the stabilizer fixes x itself: orbit diameter 0
    res.invariant_set.assign(1, x);
    return res;
  }

  // invariance under the rotation generator, within the truncation
  Word g = model.rotation(x);
  for (Gid z : res.invariant_set) {
    auto img = model.apply(g, z);
    if (!img) continue;
    if (std::find(res.invariant_set.begin(), res.invariant_set.end(), *img) ==
        res.invariant_set.end()) {
      res.diagnostic = "invariant set moves under the rotation generator";
      return res;
    }
  }

  // pairwise adjacency in the projection complex at K
  for (size_t i = 0; i < res.invariant_set.size(); ++i)
    for (size_t j = i + 1; j < res.invariant_set.size(); ++j) {
      Gid a = res.invariant_set[i], b = res.invariant_set[j];
      for (Gid y : sys.coordinate(coord)) {
        if (y == a || y == b) continue;
        auto far = mx.d_angle_at_least(y, a, b, K);
        if (far && *far) {
          res.diagnostic = "orbit set spans a non-edge at " + sys.id(y).label();
          return res;
        }
      }
    }
  res.ok = true;
  return res;
}

}  // namespace compro
