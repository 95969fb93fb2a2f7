#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace compro {

/// Check counters with the truncation-honesty convention: an instance whose
/// data escapes the materialized set counts inconclusive, never pass.
struct CheckStat {
  long pass_count = 0;
  long fail_count = 0;
  long inconclusive = 0;
  std::vector<std::string> witnesses;  // capped

  bool ok() const { return fail_count == 0; }
  void merge(const CheckStat& o);
  void fail(const std::string& w);
};

/// Report of the rotating-family verification sweep: conjugation coherence,
/// commutation across inactive pairs, the rotation strength bound, and
/// pointwise fixing away from the active set.
struct FamilyReport {
  CheckStat conjugation;
  CheckStat commutation;
  CheckStat rotation_bound;
  CheckStat fixes_inactive;

  bool ok() const {
    return conjugation.ok() && commutation.ok() && rotation_bound.ok() &&
           fixes_inactive.ok();
  }
};

/// Exponent budget for sweeps over rotation-group elements.
struct RotorOptions {
  std::int64_t exponent_budget = 2;
  size_t conjugator_samples = 24;
};

FamilyReport verify_rotating_family(const GraphProductModel& model,
                                    const RotorOptions& opt = {});

/// Elements of the rotation group of X that displace some active element by
/// at most N, as lattice exponents. Exact via the displacement formula
/// (|k| <= N / (D*q)), cross-checked by direct evaluation on the truncation.
struct IsotropyWindow {
  std::vector<std::int64_t> exponents;  // includes 0
  bool budget_limited = false;
};

IsotropyWindow proper_isotropy_window(const GraphProductModel& model, Gid x,
                                      const Rational& N);

/// Transfer along a coordinate: a rotation of X far outside the small
/// isotropy window moves X' (or leaves it) so that the chosen image is
/// kappa-close to X as seen from Y.
struct TransferResult {
  bool ok = false;
  std::int64_t exponent = 0;  // chosen rotation power of X
  Locus image;                // X' or its rotated copy
  bool used_rotated = false;
  std::string diagnostic;
};

TransferResult transfer(const GraphProductModel& model, Gid y, Gid x, const Locus& xp,
                        const RotorOptions& opt = {});

/// Order on an interval slice induced from rotated anchor points; computed
/// twice with independent choices and compared.
struct InducedOrderResult {
  bool ok = false;
  std::vector<Gid> order;
  std::string diagnostic;
};

InducedOrderResult induced_order(const GraphProductModel& model, Gid x, Gid z, int coord,
                                 const Rational& level, const RotorOptions& opt = {});

/// The stabilizer orbit in the projection complex of coordinate j has
/// diameter at most 1: exhibits the invariant vertex set and verifies
/// pairwise adjacency, plus invariance under the rotation generator.
struct EllipticityResult {
  bool ok = false;
  std::vector<Gid> invariant_set;
  std::string diagnostic;
};

EllipticityResult check_ellipticity(const GraphProductModel& model, Gid x, int coord,
                                    const Rational& K);

}  // namespace compro
