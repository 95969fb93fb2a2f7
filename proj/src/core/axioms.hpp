#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/system.hpp"

namespace compro {

struct AxiomWitness {
  std::vector<ElementId> elements;
  std::vector<Rational> values;
  std::string detail;
};

enum class Verdict { Pass, Fail, Inconclusive };

struct AxiomVerdict {
  Verdict verdict = Verdict::Pass;
  std::vector<AxiomWitness> witnesses;   // capped, first offenders in scan order
  long checked = 0;
  long inconclusive = 0;
};

/// Outcome of the axiom sweep. Failures are content, not errors. A report
/// that passes at theta t passes at every larger t.
struct AxiomReport {
  Rational theta;
  std::map<std::string, AxiomVerdict> axioms;
  std::optional<Rational> minimal_theta;  // absent when a theta-free axiom fails
  std::vector<ElementId> filling_cover;
  long inconclusive_total = 0;

  bool pass() const {
    for (const auto& [k, v] : axioms)
      if (v.verdict == Verdict::Fail) return false;
    return true;
  }
};

/// Verifies the composite-system axioms exhaustively at the given theta:
/// d^pi symmetry, triangle inequality, Behrstock, per-coordinate properness,
/// separation, symmetry in action, closeness in inaction, and finite filling
/// via a greedy cover. Instances touching boundary-flagged elements are
/// counted inconclusive rather than pass.
AxiomReport check_axioms(const CompositeSystem& sys, const Rational& theta);

}  // namespace compro
