#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/calibrate.hpp"
#include "core/json_io.hpp"
#include "core/metrics.hpp"
#include "core/system.hpp"
#include "core/words.hpp"

namespace compro {

// ---------------------------------------------------------------------------
// Graph-product model: one coordinate per generator of a graph product of
// infinite cyclic groups. Elements of coordinate i are cosets of the star
// subgroup <a_i, link(i)>, i.e. conjugates of <a_i>; the rotation group of
// an element is the conjugate of <a_i^q>. Distances read the a_i-exponent at
// normal-form divergence, scaled by the weight.

struct GraphProductSpec {
  int m = 2;
  std::vector<std::pair<int, int>> edges;
  std::int64_t q = 0;        // 0 requests auto-calibration
  Rational weight{1};
  int radius = 6;            // tree-distance radius; syllable cap is radius/2
  int unit_range = 1;        // unit exponents allowed: |u| <= unit_range
  int q_range = 1;           // q-multiples allowed: |v| <= q_range
  bool mixed = false;        // allow u + v*q with both parts nonzero
  bool allow_unsafe = false; // skip the rotation-strength refusal (test rigs)
};

/// An element's location: coordinate plus canonical coset representative.
/// Usable for elements beyond the materialized truncation.
struct Locus {
  int coord = 0;
  Word rep;
};

class GraphProductModel {
 public:
  static std::unique_ptr<GraphProductModel> build(const GraphProductSpec& spec);

  const GraphProductSpec& spec() const { return spec_; }
  const CommGraph& graph() const { return graph_; }
  const WordCalc& calc() const { return calc_; }
  const WordCalc& quotient_calc() const { return quotient_; }
  const CompositeSystem& system() const { return *sys_; }
  const Metrics& metrics() const { return *metrics_; }
  const Ladder& ladder() const { return ladder_; }
  const AxiomReport& axiom_report() const { return axioms_; }
  std::int64_t q() const { return spec_.q; }

  int syllable_cap() const { return syllable_cap_; }
  const Word& rep(Gid g) const { return reps_[size_t(g)]; }
  Locus locus(Gid g) const { return {sys_->coord_of(g), reps_[size_t(g)]}; }

  /// Canonicalizes an arbitrary word as a coset representative for the
  /// coordinate and looks it up; nullopt when the element lies beyond the
  /// truncation.
  std::optional<Gid> find(int coord, const Word& w) const;
  Locus canonical(int coord, const Word& w) const;

  /// Image of an element under a group word; nullopt marks departure from
  /// the truncation.
  std::optional<Gid> apply(const Word& w, Gid g) const;
  Locus apply_locus(const Word& w, const Locus& l) const;

  /// Generator of the rotation group of Y (conjugated q-th power), raised to
  /// the k-th lattice step.
  Word rotation(Gid y, std::int64_t k = 1) const;
  Word rotation(const Locus& y, std::int64_t k = 1) const;

  /// Divergence exponent of X at Y; the distance formula is
  /// weight * |proj(X) - proj(Z)|.
  std::int64_t proj(Gid y, const Locus& x) const;
  std::int64_t proj_word(Gid y, const Word& xrep) const;
  std::int64_t proj_gid(Gid y, Gid x) const { return proj_tab_[size_t(y)][size_t(x)]; }
  Rational dpi_locus(Gid y, const Locus& x, const Locus& z) const;

  bool active_locus(Gid y, const Locus& x) const;

  /// Word-problem answers. trivial() is the independent multiplication
  /// oracle; kernel_member() tests membership in the normal closure of the
  /// q-th powers through the graph product of Z/q.
  bool trivial(const Word& w) const { return calc_.trivial(w); }
  bool kernel_member(const Word& w) const { return quotient_.trivial(w); }
  Word quotient_normal_form(const Word& w) const { return quotient_.normal(w); }

  const std::vector<bool>& star(int coord) const { return star_[size_t(coord - 1)]; }

 private:
  GraphProductModel(const GraphProductSpec& spec);
  void materialize();
  std::string key(int coord, const Word& w) const;

  GraphProductSpec spec_;
  CommGraph graph_;
  WordCalc calc_;
  WordCalc quotient_;
  int syllable_cap_;
  std::vector<std::vector<bool>> star_;
  std::unique_ptr<CompositeSystem> sys_;
  std::unique_ptr<Metrics> metrics_;
  std::vector<Word> reps_;
  std::map<std::string, Gid> index_;
  std::vector<std::vector<std::int64_t>> proj_tab_;
  Ladder ladder_;
  AxiomReport axioms_;
};

// ---------------------------------------------------------------------------
// Tree-segment model: geodesic segments in a finite tree, projections by
// gates (nearest-point projections), activity by bounded overlap.

struct TreeSegmentsSpec {
  // explicit form
  std::vector<std::pair<int, int>> edges;
  struct Segment {
    int a = 0, b = 0;
    int color = 0;  // 0 = assign greedily
  };
  std::vector<Segment> segments;
  // random form, used when edges is empty
  std::uint64_t seed = 1;
  int vertices = 40;
  int segment_count = 12;
  int overlap = 0;
  int max_colors = 4;
};

struct TreeSegmentsResult {
  std::unique_ptr<CompositeSystem> system;
  std::vector<std::vector<int>> segment_vertices;  // per gid, path vertices
  std::vector<std::pair<int, int>> tree_edges;
  std::uint64_t seed = 0;
};

TreeSegmentsResult gen_tree_segments(const TreeSegmentsSpec& spec);

// ---------------------------------------------------------------------------
// Adversarial instances: each differs from a valid configuration in exactly
// one targeted entry and must fail exactly its targeted check.

enum class AdversarialKind {
  AsymmetricDpi,
  BehrstockBreak,
  SeparationBreak,
  RotationTooSmall,
};

std::optional<AdversarialKind> adversarial_kind_from(const std::string& name);
std::string adversarial_kind_name(AdversarialKind k);

/// Table kinds return a system; RotationTooSmall instead returns a
/// graph-product model with q = 1 through build_model_spec.
std::unique_ptr<CompositeSystem> gen_adversarial(AdversarialKind kind,
                                                 const Rational& theta);

// ---------------------------------------------------------------------------
// Model spec files

struct ModelSpec {
  std::string kind;
  GraphProductSpec graph_product;
  TreeSegmentsSpec tree_segments;
  AdversarialKind adversarial = AdversarialKind::AsymmetricDpi;
  Rational theta{0};
};

ModelSpec parse_model_spec(const Json& doc);
Json model_spec_json(const ModelSpec& spec);

}  // namespace compro
