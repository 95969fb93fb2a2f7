#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/calibrate.hpp"
#include "core/metrics.hpp"

namespace compro {

/// A per-coordinate subset of the composite set, with O(1) membership.
class Region {
 public:
  Region() = default;
  explicit Region(const CompositeSystem& sys)
      : sys_(&sys), member_(size_t(sys.total()), false) {}

  bool contains(Gid g) const { return member_[size_t(g)]; }
  void insert(Gid g) {
    if (!member_[size_t(g)]) {
      member_[size_t(g)] = true;
      ++size_;
    }
  }
  long size() const { return size_; }
  bool empty() const { return size_ == 0; }
  long coord_size(int coord) const;
  std::vector<Gid> members() const;
  std::vector<Gid> members(int coord) const;
  const CompositeSystem& system() const { return *sys_; }

  friend bool operator==(const Region& a, const Region& b) {
    return a.member_ == b.member_;
  }

 private:
  const CompositeSystem* sys_ = nullptr;
  std::vector<bool> member_;
  long size_ = 0;
};

struct ConvexityWitness {
  Gid x = -1, z = -1, y = -1;
  int j = 0;
  Rational seen;
};

struct ConvexityReport {
  bool convex = false;
  std::vector<ConvexityWitness> witnesses;  // capped
};

/// Checks that every interval set spanned by same-coordinate members stays
/// inside the region. `levels` has one entry per coordinate j; use the same
/// value everywhere for the scalar notion. Levels at or below 10*kappa are
/// rejected.
ConvexityReport is_convex(const Metrics& mx, const Region& w,
                          const std::vector<Rational>& levels, const Rational& kappa,
                          size_t witness_cap = 16);
ConvexityReport is_convex(const Metrics& mx, const Region& w, const Rational& level,
                          const Rational& kappa, size_t witness_cap = 16);

struct OsculationSet {
  Gid pivot = -1;
  Rational level;
  std::vector<Gid> members;
};

/// The elements just outside the region that every region element active
/// for them sees far from the pivot. Undefined (throws) when the pivot's
/// active set misses the region entirely.
OsculationSet osculation_set(const Metrics& mx, const Region& w, Gid pivot,
                             const Rational& level, const Rational& kappa);

struct TerminalResult {
  Gid element = -1;
  bool ok = false;
  std::vector<Gid> trace;    // the walk, pivot first
  std::string diagnostic;
  bool invariance_checked = false;
};

/// Walks from the pivot through minimal members of per-coordinate osculation
/// slices until an element with empty osculation set at the reduced level is
/// found. At most m steps; the emptiness of the final set is re-checked
/// directly. `invariant_ok` reports whether rotation invariance of the
/// region was certified by the caller (recorded, not enforced).
TerminalResult terminal_osculator(const Metrics& mx, const Ladder& ladder,
                                  const Region& w, Gid pivot, const Rational& level,
                                  bool invariance_checked);

enum class LemmaVerdict { Pass, Fail, Inapplicable };

struct LemmaReport {
  std::string name;
  LemmaVerdict verdict = LemmaVerdict::Inapplicable;
  long instances = 0;
  std::string note;  // witness on failure, reason when inapplicable
};

/// Evaluates the hull lemmas directly on the instance: transitivity of
/// betweenness, finiteness of osculation sets, nesting of osculation sets
/// along a member, and convexity after absorbing an element with empty
/// osculation set. Lemmas whose hypotheses fail report Inapplicable.
std::vector<LemmaReport> check_hull_lemmas(const Metrics& mx, const Ladder& ladder,
                                           const Region& w, Gid pivot,
                                           std::optional<Gid> s,
                                           const Rational& level);

}  // namespace compro
