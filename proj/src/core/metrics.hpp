#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/system.hpp"

namespace compro {

struct Ladder;

/// Derived distance machinery on top of a CompositeSystem: the family
/// H(X,Z), the modified distances d_Y obtained as minima of d^pi over
/// H(X,Z), the mixed dispatch, and the interval sets. Lazy per-pair caches;
/// all queries are pure and deterministic.
class Metrics {
 public:
  explicit Metrics(const CompositeSystem& sys) : sys_(&sys) {}

  const CompositeSystem& system() const { return *sys_; }

  /// The pairs used to stabilize the distance between same-coordinate X and
  /// Z: replacement pairs that look separated from both endpoints, the
  /// one-sided replacements, and (X,Z) itself. Pairs whose qualifying
  /// distances are undefined do not participate.
  std::vector<std::pair<Gid, Gid>> family(Gid x, Gid z) const;

  /// Modified distance d_Y(X,Z) for same-coordinate X,Z: the minimum of
  /// d^pi_Y over family(X,Z), skipping pairs Y cannot measure.
  /// d_Y(X,X) is 0 by convention. Undefined when nothing is measurable.
  std::optional<Rational> dY(Gid y, Gid x, Gid z) const;

  /// Dispatch: d_Y on coordinate mates, raw d^pi across coordinates.
  std::optional<Rational> d_angle(Gid y, Gid x, Gid z) const;

  /// Once the coarse-equality band d^pi - kappa <= d_Y <= d^pi has been
  /// verified on the instance, installing kappa here lets threshold
  /// decisions run off d^pi alone, falling back to the exact minimum only
  /// inside the ambiguous band.
  void set_kappa_hint(const Rational& kappa) { kappa_hint_ = kappa; }

  /// Decides d_angle(Y;X,Z) >= level; nullopt when the distance is
  /// undefined. Exact (the band fast path never changes the answer).
  std::optional<bool> d_angle_at_least(Gid y, Gid x, Gid z, const Rational& level) const;

  /// Interval set in coordinate j at level M: active-for-both elements of
  /// coordinate j whose view of (X,Z) is at least M. Sorted by element id
  /// unless a ladder is supplied, the level reaches its Theta and all three
  /// coordinates agree, in which case the standard order is used.
  std::vector<Gid> y_set(int j, const Rational& level, Gid x, Gid z,
                         const Ladder* ladder = nullptr) const;

  /// Set {Y : d_Y(X,Z) >= K} within the coordinate of X,Z.
  std::vector<Gid> y_set_same_coord(const Rational& level, Gid x, Gid z) const;

  /// Cached vector of d_Y(X,Z) over all Y of the coordinate, indexed by the
  /// per-coordinate element index. Entries with defined[i] false carry no
  /// value. Sweeps that touch many viewpoints per pair should use this.
  struct Row {
    std::vector<Rational> val;
    std::vector<bool> defined;
  };
  const Row& pair_row(Gid x, Gid z) const { return *dY_row(x, z); }

 private:
  const Row* dY_row(Gid x, Gid z) const;

  const CompositeSystem* sys_;
  mutable std::unordered_map<std::uint64_t, Row> rows_;
  std::optional<Rational> kappa_hint_;
};

/// Comparator-based total order on a large-projection slice: X lowest, Z
/// greatest, interior elements compared by "Y before Y' iff d_Y(X,Y') is
/// larger than kappa". Verification failures are reported, not assumed away.
struct OrderResult {
  bool ok = false;
  std::vector<Gid> order;       // includes X first and Z last when ok
  std::string diagnostic;       // offending pair / inequality when !ok
  std::pair<Gid, Gid> offender{-1, -1};
};

OrderResult standard_order(const Metrics& mx, Gid x, Gid z,
                           const std::vector<Gid>& interior,
                           const Rational& kappa);

}  // namespace compro
