#pragma once

#include <string>
#include <vector>

#include "core/metrics.hpp"
#include "core/rational.hpp"

namespace compro {

/// The full numeric parameter stack used by the hull and rotor machinery.
/// kappa and Theta come from instance calibration; the rest follow by fixed
/// formulas, taking strict inequalities with margin exactly 1 so that
/// ladders are reproducible.
struct Ladder {
  Rational theta;
  Rational kappa;
  Rational Theta;
  Rational c_star;
  Rational Theta_P;
  Rational Theta_Rot;
  Rational K;
  std::vector<Rational> L;                 // base tuple, one level per coordinate
  std::vector<std::vector<Rational>> Lj;   // cyclic shifts, Lj[j-1] peaks at j

  /// Level tuple whose maximum sits on coordinate j0.
  const std::vector<Rational>& shifted(int j0) const { return Lj[size_t(j0 - 1)]; }

  /// Rebuilds c_star .. K and the tuples from theta/kappa/Theta and m.
  void derive(int m);

  /// Structural inequalities between the rungs. The tuple maximum is allowed
  /// to touch Theta_P - kappa exactly: at kappa = 0 the two coincide and
  /// every downstream use only needs the non-strict bound.
  void validate(int m) const;
};

struct CalibrationResult {
  Ladder ladder;
  bool ok = false;
  std::vector<std::string> binding;   // which properties forced kappa/Theta
  std::string failure;                // set when verification failed
};

/// Finds the least kappa >= theta and a matching Theta for which the seven
/// derived-distance properties (symmetry, coarse equality, coarse triangle,
/// Behrstock, properness, monotonicity, order) hold exhaustively on the
/// instance, then fills in the remaining rungs by formula.
CalibrationResult calibrate_constants(const Metrics& mx);

/// Re-checks the seven properties at given kappa/Theta; returns the names of
/// any that fail (empty means all hold).
std::vector<std::string> verify_bbf_properties(const Metrics& mx, const Rational& kappa,
                                               const Rational& Theta,
                                               std::string* witness = nullptr);

}  // namespace compro
