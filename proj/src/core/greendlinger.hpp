#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/windmill.hpp"

namespace compro {

/// One shortening step: a coordinate where the element moves everything far,
/// a center there, and a rotation of that center that brings the moved image
/// back within the close band.
struct ShorteningStep {
  int coord = 0;
  ElementId witness;       // the element X whose displacement was measured
  ElementId center;        // R
  std::int64_t exponent = 0;  // lattice power of the center's rotation
  Rational displacement;      // raw distance d^pi_R(X, gamma X)
  Rational after;             // raw distance d^pi_R(X, gamma_s gamma X)
};

struct GreendlingerResult {
  bool trivial = false;        // the input is the identity
  bool ok = false;             // a shortening pair was found (or trivial)
  ShorteningStep step;
  std::string diagnostic;
};

/// Finds a principal coordinate and shortening pair for a nontrivial element
/// of the rotation closure. Distances beyond the truncation run through the
/// raw-distance band with the verified kappa, which is exact at kappa = 0.
GreendlingerResult greendlinger(const GraphProductModel& model, const Word& gamma,
                                int coord_hint = 1);

struct ReductionResult {
  bool reached_identity = false;
  std::vector<ShorteningStep> steps;
  std::string diagnostic;
};

/// Full reduction: iterate the shortening until the element collapses to the
/// identity, within the given iteration cap. Every step must satisfy the
/// close-band bound.
ReductionResult greendlinger_reduce(const GraphProductModel& model, const Word& gamma,
                                    int max_steps);

/// Translates a word over presentation symbols (negative generator ids from
/// Word::parse, s0 s1 ...) into a group word using the emitted generators.
Word symbols_to_group(const Presentation& p, const WordCalc& calc, const Word& symbols);

}  // namespace compro
