#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/hull.hpp"
#include "core/model.hpp"
#include "core/rotors.hpp"

namespace compro {

/// Tracks, for every element absorbed so far, which accumulated
/// representative its orbit came from and a group word carrying the
/// representative onto it.
struct OrbitWitness {
  Gid rep = -1;
  Word word;
};

/// The evolving state: per-coordinate regions, the principal coordinate,
/// the generating centers of the current group, and the accumulated
/// representative set used for presentations.
struct Windmill {
  Region region;
  int j0 = 1;
  bool full = true;
  std::vector<Gid> representatives;
  std::unordered_map<Gid, OrbitWitness> witness;

  long coord_size(int c) const { return region.coord_size(c); }
};

Windmill windmill_init(const GraphProductModel& model);

struct OsculatorFind {
  enum class Kind { Absorbed, Gap, Neighbor, Trivial };
  Kind kind = Kind::Trivial;
  std::vector<Gid> members;     // admissible set (gap list or neighbor orbit)
  Gid neighbor_rep = -1;        // chosen orbit representative, neighbor case
  std::string note;
};

OsculatorFind find_osculators(const GraphProductModel& model, const Windmill& w);

/// Bipartite tree of one unfolding step: black vertices are osculator
/// copies, white vertices are copies of the step's base region slice.
struct PrincipalTree {
  struct Node {
    bool black = false;
    std::vector<Gid> elements;  // materialized part of the copy
    int parent = -1;
    bool clipped = false;       // some of the copy left the truncation
  };
  std::vector<Node> nodes;
  int depth = 0;

  long blacks() const;
  long whites() const;
};

struct TreeCheck {
  PrincipalTree tree;
  bool ok = false;
  long lower_checked = 0;  // black-between-whites instances
  long upper_checked = 0;  // same-side white pair instances
  std::string diagnostic;
};

TreeCheck principal_tree(const GraphProductModel& model, const Windmill& w,
                         const OsculatorFind& osc, int depth_cap = 2);

struct StepRecord {
  int step = 0;
  int j0 = 0;
  std::string kind;
  std::vector<ElementId> osculators;
  std::vector<long> region_sizes;
  std::string convexity_level;
  bool partial = false;  // closure touched the truncation boundary
  long tree_black = 0, tree_white = 0;
  int tree_depth = 0;
  long tree_lower_checked = 0, tree_upper_checked = 0;
};

struct UnfoldOutcome {
  Windmill next;
  bool partial = false;
};

/// One unfolding: absorb the admissible set, close the regions under the
/// grown group within the truncation, advance the principal coordinate, and
/// re-verify the windmill facts (region invariance, convexity at the level
/// the step guarantees, connectivity of nonempty slices). Violations of the
/// guaranteed facts raise contradiction_error.
UnfoldOutcome unfold_step(const GraphProductModel& model, const Windmill& w,
                          const OsculatorFind& osc);

enum class PresentationForm { Transversal, Closure };

struct Presentation {
  PresentationForm form = PresentationForm::Transversal;
  int complete_within_radius = 0;
  struct Generator {
    ElementId element;
    Word word;  // the rotation generator as a group word
  };
  std::vector<Generator> generators;
  struct Relator {
    int left = 0;        // generator index
    int right = 0;       // generator index
    Word conjugator;     // w in [s, w s' w^-1]
    ElementId left_element;
    ElementId conjugated_element;  // location of w Y'
    Word word;           // the full commutator, normal form in the group
  };
  std::vector<Relator> relators;
  // closure form only: explicit conjugation relations (inverse(h) g s g^-1)
  std::vector<Word> conjugation_relators;
  long closure_generator_count = 0;  // closure form lists every absorbed element
};

Json presentation_json(const GraphProductModel& model, const Presentation& p);

/// Emits the partially commutative presentation carried by the windmill.
/// Every relator is re-verified against the model's multiplication; a
/// failing relator raises contradiction_error.
Presentation emit_presentation(const GraphProductModel& model, const Windmill& w,
                               PresentationForm form, int conjugation_budget = 64);

struct RunResult {
  Windmill final_state;
  Presentation presentation;
  std::vector<StepRecord> trace;
  bool absorbed = false;   // the truncated set was fully absorbed
  bool budget_hit = false;
  int steps = 0;
};

Json trace_json(const GraphProductModel& model, const StepRecord& r);

/// Full process: iterate osculator search and unfolding until the truncated
/// set is absorbed or the budget runs out, verifying the step facts and the
/// principal-tree estimates at every non-trivial step.
RunResult run_windmill(const GraphProductModel& model, int budget = 500,
                       PresentationForm form = PresentationForm::Transversal);

}  // namespace compro
