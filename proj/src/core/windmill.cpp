#include "core/windmill.hpp"

#include <algorithm>
#include <deque>

#include "core/errors.hpp"

namespace compro {

namespace {

Rational gap_level(const Ladder& l) {
  return l.c_star / Rational(2) - Rational(20) * l.kappa;
}

Rational neighbor_level(const Ladder& l) { return l.c_star / Rational(2); }

// d_Y(X,Z) >= bound, deciding through the raw distance band first; X and Z
// must be materialized, same coordinate as Y.
bool dy_at_least(const GraphProductModel& model, Gid y, Gid x, Gid z,
                 const Rational& bound) {
  auto r = model.metrics().d_angle_at_least(y, x, z, bound);
  return r && *r;
}

// d_Y(X,Z) <= bound via d_Y <= d^pi, exact fallback inside the band.
bool dy_at_most(const GraphProductModel& model, Gid y, Gid x, Gid z,
                const Rational& bound) {
  if (x == z) return Rational(0) <= bound;
  auto raw = model.system().dpi(y, x, z);
  if (!raw) return false;
  if (*raw <= bound) return true;
  if (*raw - model.ladder().kappa > bound) return false;
  auto exact = model.metrics().dY(y, x, z);
  return exact && *exact <= bound;
}

}  // namespace

Windmill windmill_init(const GraphProductModel& model) {
  const auto& sys = model.system();
  Windmill w;
  w.region = Region(sys);
  w.j0 = 1;
  w.full = true;

  // greedy maximal mutually inactive set, in element order
  std::vector<Gid> chosen;
  for (Gid g = 0; g < sys.total(); ++g) {
    bool ok = true;
    for (Gid c : chosen)
      if (sys.active(g, c)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(g);
  }
  for (Gid g : chosen) {
    w.region.insert(g);
    w.representatives.push_back(g);
    w.witness[g] = {g, Word{}};
  }

  // maximality gives every outside element an active partner inside
  for (Gid r = 0; r < sys.total(); ++r) {
    if (w.region.contains(r)) continue;
    bool meets = false;
    for (Gid c : chosen)
      if (sys.active(r, c)) {
        meets = true;
        break;
      }
    if (!meets)
      throw contradiction_error("initial seed is not maximal at " + sys.id(r).label());
  }

  auto conv = is_convex(model.metrics(), w.region, model.ladder().shifted(w.j0),
                        model.ladder().kappa, 1);
  if (!conv.convex)
    throw contradiction_error("initial mutually inactive seed is not tuple-convex");
  return w;
}

OsculatorFind find_osculators(const GraphProductModel& model, const Windmill& w) {
  const auto& sys = model.system();
  const auto& mx = model.metrics();
  const Ladder& ladder = model.ladder();
  OsculatorFind out;

  if (w.region.size() == sys.total()) {
    out.kind = OsculatorFind::Kind::Absorbed;
    return out;
  }

  // gap probe: a convexity defect at the gap level turns outside elements of
  // the principal coordinate into the admissible set
  Rational glev = gap_level(ladder);
  auto conv = is_convex(mx, w.region, glev, ladder.kappa, 4);
  if (!conv.convex) {
    out.kind = OsculatorFind::Kind::Gap;
    for (Gid r : sys.coordinate(w.j0)) {
      if (w.region.contains(r)) continue;
      bool qualifies = false;
      for (int i = 1; i <= sys.m() && !qualifies; ++i) {
        auto mem = w.region.members(i);
        for (size_t a = 0; a < mem.size() && !qualifies; ++a) {
          for (size_t b = 0; b < mem.size(); ++b) {
            if (a == b) continue;
            if (!sys.active(r, mem[a]) || !sys.active(r, mem[b])) continue;
            auto far = mx.d_angle_at_least(r, mem[a], mem[b], glev);
            if (far && *far) {
              qualifies = true;
              break;
            }
          }
        }
      }
      if (qualifies) out.members.push_back(r);
    }
    if (out.members.empty()) {
      out.kind = OsculatorFind::Kind::Trivial;
      out.note = "convexity defect lies outside the principal coordinate";
    }
    return out;
  }

  // neighbor search: walk towards the region from outside candidates, then
  // fall back to a direct scan; the chosen osculator is the least candidate
  Rational nlev = neighbor_level(ladder);
  Gid pick = -1;
  Rational walk_level = nlev + Rational(2 * sys.m()) * ladder.kappa;
  Rational walk_floor = Rational(2 * sys.m() + 12) * ladder.kappa + ladder.Theta;
  if (walk_level < walk_floor) walk_level = walk_floor;
  for (Gid cand : sys.coordinate(w.j0)) {
    if (w.region.contains(cand)) continue;
    TerminalResult t;
    try {
      t = terminal_osculator(mx, ladder, w.region, cand, walk_level, true);
    } catch (const usage_error&) {
      continue;
    }
    if (t.ok && t.element >= 0 && sys.coord_of(t.element) == w.j0 &&
        !w.region.contains(t.element)) {
      auto osc = osculation_set(mx, w.region, t.element, nlev, ladder.kappa);
      if (osc.members.empty()) {
        pick = t.element;
        break;
      }
    }
  }
  if (pick < 0) {
    for (Gid cand : sys.coordinate(w.j0)) {
      if (w.region.contains(cand)) continue;
      try {
        auto osc = osculation_set(mx, w.region, cand, nlev, ladder.kappa);
        if (osc.members.empty()) {
          pick = cand;
          break;
        }
      } catch (const usage_error&) {
        continue;
      }
    }
  }
  if (pick < 0) {
    out.kind = OsculatorFind::Kind::Trivial;
    out.note = "no neighbor osculator in the principal coordinate";
    return out;
  }

  // admissible set: the orbit of the chosen osculator under the current
  // group, within the truncation
  out.kind = OsculatorFind::Kind::Neighbor;
  out.neighbor_rep = pick;
  std::deque<Gid> queue{pick};
  std::vector<bool> seen(size_t(sys.total()), false);
  seen[size_t(pick)] = true;
  while (!queue.empty()) {
    Gid cur = queue.front();
    queue.pop_front();
    out.members.push_back(cur);
    for (Gid c : w.region.members()) {
      for (std::int64_t k : {std::int64_t(1), std::int64_t(-1)}) {
        auto img = model.apply(model.rotation(c, k), cur);
        if (img && !seen[size_t(*img)]) {
          seen[size_t(*img)] = true;
          queue.push_back(*img);
        }
      }
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

long PrincipalTree::blacks() const {
  long n = 0;
  for (const auto& node : nodes)
    if (node.black) ++n;
  return n;
}

long PrincipalTree::whites() const {
  long n = 0;
  for (const auto& node : nodes)
    if (!node.black) ++n;
  return n;
}

TreeCheck principal_tree(const GraphProductModel& model, const Windmill& w,
                         const OsculatorFind& osc, int depth_cap) {
  const auto& sys = model.system();
  const Ladder& ladder = model.ladder();
  TreeCheck chk;
  if (osc.members.empty()) {
    chk.diagnostic = "no osculators: no tree to build";
    return chk;
  }

  // base white copy: the principal slice of the windmill, or the admissible
  // set itself when that slice is empty
  std::vector<Gid> base = w.region.members(w.j0);
  if (base.empty()) base = osc.members;
  (void)depth_cap;

  PrincipalTree& tree = chk.tree;
  tree.nodes.push_back({false, base, -1, false});
  // blacks adjacent to the root, then one ring of white copies per black;
  // the truncation rarely supports more and the estimates quantify over
  // vertex triples of this shape
  for (Gid r : osc.members) {
    tree.nodes.push_back({true, {r}, 0, false});
    int bi = static_cast<int>(tree.nodes.size()) - 1;
    for (std::int64_t k : {std::int64_t(1), std::int64_t(-1), std::int64_t(2),
                           std::int64_t(-2)}) {
      Word g = model.rotation(r, k);
      std::vector<Gid> copy;
      bool clipped = false;
      for (Gid e : tree.nodes[0].elements) {
        if (e == r) continue;
        auto img = model.apply(g, e);
        if (img)
          copy.push_back(*img);
        else
          clipped = true;
      }
      if (copy.empty()) continue;
      std::sort(copy.begin(), copy.end());
      tree.nodes.push_back({false, copy, bi, clipped});
    }
  }
  tree.depth = tree.nodes.size() > 1 ? 2 : 0;

  // injectivity on fully materialized copies
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    for (size_t j = i + 1; j < tree.nodes.size(); ++j) {
      if (tree.nodes[i].clipped || tree.nodes[j].clipped) continue;
      if (tree.nodes[i].elements == tree.nodes[j].elements) {
        chk.diagnostic = "two tree vertices map to the same element set";
        return chk;
      }
    }
  }

  Rational lower = ladder.Theta_Rot - Rational(2) * ladder.Theta_P - ladder.kappa;
  Rational upper = Rational(2) * ladder.Theta_P + Rational(3) * ladder.kappa;

  // lower estimate: a black vertex separates white copies on opposite sides
  for (size_t bi = 0; bi < tree.nodes.size(); ++bi) {
    const auto& black = tree.nodes[bi];
    if (!black.black) continue;
    Gid r = black.elements.front();
    int parent_white = black.parent;
    for (size_t wi2 = 0; wi2 < tree.nodes.size(); ++wi2) {
      if (tree.nodes[wi2].black || int(wi2) == parent_white) continue;
      if (tree.nodes[wi2].parent != int(bi)) continue;
      for (Gid x1 : tree.nodes[size_t(parent_white)].elements) {
        if (x1 == r) continue;
        for (Gid x2 : tree.nodes[wi2].elements) {
          if (x2 == r || x1 == x2) continue;
          ++chk.lower_checked;
          if (!dy_at_least(model, r, x1, x2, lower)) {
            chk.diagnostic = "separation estimate fails at " + sys.id(r).label() +
                             " between " + sys.id(x1).label() + " and " +
                             sys.id(x2).label();
            return chk;
          }
        }
      }
    }
  }

  // upper estimate: white copies reached through the same first edge stay
  // close as seen from the black vertex; here, two children of one black, or
  // the parent against a sibling black's child
  for (size_t b1 = 0; b1 < tree.nodes.size(); ++b1) {
    if (!tree.nodes[b1].black) continue;
    Gid r1 = tree.nodes[b1].elements.front();
    for (size_t b2 = 0; b2 < tree.nodes.size(); ++b2) {
      if (!tree.nodes[b2].black || b1 == b2) continue;
      if (tree.nodes[b1].parent != tree.nodes[b2].parent) continue;
      // from r1, the parent white and every child of b2 lie on one side
      const auto& parent = tree.nodes[size_t(tree.nodes[b1].parent)];
      for (size_t w2 = 0; w2 < tree.nodes.size(); ++w2) {
        if (tree.nodes[w2].black || tree.nodes[w2].parent != int(b2)) continue;
        for (Gid x1 : parent.elements) {
          if (x1 == r1) continue;
          for (Gid x2 : tree.nodes[w2].elements) {
            if (x2 == r1 || x1 == x2) continue;
            ++chk.upper_checked;
            if (!dy_at_most(model, r1, x1, x2, upper)) {
              chk.diagnostic = "same-side estimate fails at " + sys.id(r1).label();
              return chk;
            }
          }
        }
      }
    }
  }

  chk.ok = true;
  return chk;
}

UnfoldOutcome unfold_step(const GraphProductModel& model, const Windmill& w,
                          const OsculatorFind& osc) {
  const auto& sys = model.system();
  const auto& mx = model.metrics();
  const Ladder& ladder = model.ladder();
  UnfoldOutcome out;
  out.next = w;
  Windmill& next = out.next;

  if (osc.kind == OsculatorFind::Kind::Trivial ||
      osc.kind == OsculatorFind::Kind::Absorbed) {
    next.j0 = w.j0 % sys.m() + 1;
    return out;
  }

  bool principal_was_empty = w.region.coord_size(w.j0) == 0;

  // non-full intermediate state: the admissible set alone must already be
  // convex at the half-level before the full closure happens
  if (principal_was_empty && osc.kind == OsculatorFind::Kind::Neighbor) {
    Region staged = w.region;
    for (Gid r : osc.members) staged.insert(r);
    Rational B = ladder.c_star / Rational(2) + Rational(10) * ladder.kappa;
    auto conv = is_convex(mx, staged, B, ladder.kappa, 1);
    if (!conv.convex)
      throw contradiction_error("staged admissible set loses half-level convexity");
  }

  // absorb the admissible set with orbit bookkeeping; gap sets are reduced
  // to one representative per orbit under the pre-step group
  if (osc.kind == OsculatorFind::Kind::Neighbor) {
    next.representatives.push_back(osc.neighbor_rep);
    next.region.insert(osc.neighbor_rep);
    next.witness[osc.neighbor_rep] = {osc.neighbor_rep, Word{}};
  } else {
    std::vector<bool> placed(size_t(sys.total()), false);
    for (Gid r : osc.members) {
      if (placed[size_t(r)] || next.region.contains(r)) continue;
      next.representatives.push_back(r);
      next.region.insert(r);
      next.witness[r] = {r, Word{}};
      placed[size_t(r)] = true;
      // sweep the orbit of r under the pre-step centers through the set
      std::deque<Gid> orbit{r};
      while (!orbit.empty()) {
        Gid cur = orbit.front();
        orbit.pop_front();
        for (Gid c : w.region.members()) {
          for (std::int64_t k : {std::int64_t(1), std::int64_t(-1)}) {
            Word g = model.rotation(c, k);
            auto img = model.apply(g, cur);
            if (!img || placed[size_t(*img)]) continue;
            if (std::find(osc.members.begin(), osc.members.end(), *img) ==
                osc.members.end())
              continue;
            placed[size_t(*img)] = true;
            next.region.insert(*img);
            const auto& wit = next.witness.at(cur);
            next.witness[*img] = {wit.rep, model.calc().mul(g, wit.word)};
            orbit.push_back(*img);
          }
        }
      }
    }
  }

  // closure to a fixed point: every absorbed element contributes its
  // rotation group, and every new element is both moved and moving
  bool grew = true;
  while (grew) {
    grew = false;
    auto centers = next.region.members();
    for (Gid c : centers) {
      for (std::int64_t k : {std::int64_t(1), std::int64_t(-1)}) {
        Word g = model.rotation(c, k);
        for (Gid e : next.region.members()) {
          auto img = model.apply(g, e);
          if (!img) {
            out.partial = true;
            continue;
          }
          if (!next.region.contains(*img)) {
            next.region.insert(*img);
            const auto& wit = next.witness.at(e);
            next.witness[*img] = {wit.rep, model.calc().mul(g, wit.word)};
            grew = true;
          }
        }
      }
    }
  }

  next.j0 = w.j0 % sys.m() + 1;
  next.full = true;

  // the step's convexity guarantee
  if (osc.kind == OsculatorFind::Kind::Neighbor) {
    auto conv = is_convex(mx, next.region, ladder.c_star, ladder.kappa, 2);
    if (!conv.convex)
      throw contradiction_error("unfolded region loses base-level convexity");
  } else {
    auto conv = is_convex(mx, next.region, ladder.shifted(next.j0), ladder.kappa, 2);
    if (!conv.convex)
      throw contradiction_error("unfolded region loses tuple convexity");
  }

  // region invariance under every inside rotation, within the truncation
  for (Gid c : next.region.members()) {
    for (std::int64_t k : {std::int64_t(1), std::int64_t(-1)}) {
      Word g = model.rotation(c, k);
      for (Gid e : next.region.members()) {
        auto img = model.apply(g, e);
        if (img && !next.region.contains(*img))
          throw contradiction_error("closure is not invariant: rotation of " +
                                    sys.id(c).label() + " moves " + sys.id(e).label() +
                                    " outside");
      }
    }
  }

  // nonempty slices stay connected in the projection complex at K
  for (int c = 1; c <= sys.m(); ++c) {
    auto mem = next.region.members(c);
    if (mem.size() <= 1) continue;
    std::vector<int> comp(mem.size(), -1);
    std::deque<size_t> bfs{0};
    comp[0] = 0;
    while (!bfs.empty()) {
      size_t v = bfs.front();
      bfs.pop_front();
      for (size_t u = 0; u < mem.size(); ++u) {
        if (comp[u] >= 0 || u == v) continue;
        bool edge = true;
        for (Gid y : sys.coordinate(c)) {
          if (y == mem[v] || y == mem[u]) continue;
          if (dy_at_least(model, y, mem[v], mem[u], ladder.K)) {
            edge = false;
            break;
          }
        }
        if (edge) {
          comp[u] = 0;
          bfs.push_back(u);
        }
      }
    }
    if (std::count(comp.begin(), comp.end(), 0) != long(mem.size()))
      throw contradiction_error("region slice disconnected in the projection complex");
  }

  return out;
}

Presentation emit_presentation(const GraphProductModel& model, const Windmill& w,
                               PresentationForm form, int conjugation_budget) {
  const auto& sys = model.system();
  const auto& calc = model.calc();
  Presentation p;
  p.form = form;
  p.complete_within_radius = model.spec().radius;

  std::unordered_map<Gid, int> gen_index;
  for (Gid rep : w.representatives) {
    gen_index[rep] = static_cast<int>(p.generators.size());
    p.generators.push_back({sys.id(rep), model.rotation(rep)});
  }

  // transversal relators: one per (representative, absorbed conjugate
  // location) with the conjugate outside the representative's active set
  auto members = w.region.members();
  for (Gid rep : w.representatives) {
    int li = gen_index.at(rep);
    for (Gid e : members) {
      if (e == rep || sys.active(rep, e)) continue;
      auto it = w.witness.find(e);
      if (it == w.witness.end()) continue;
      const OrbitWitness& wit = it->second;
      int ri = gen_index.at(wit.rep);
      Word s = p.generators[size_t(li)].word;
      Word conj = calc.conjugate(wit.word, p.generators[size_t(ri)].word);
      Word rel = calc.mul(calc.mul(s, conj), calc.mul(calc.inverse(s), calc.inverse(conj)));
      if (!rel.empty())
        throw contradiction_error("emitted relator fails the multiplication check at " +
                                  sys.id(rep).label() + " vs " + sys.id(e).label());
      p.relators.push_back({li, ri, wit.word, sys.id(rep), sys.id(e), rel});
    }
  }

  if (form == PresentationForm::Closure) {
    p.closure_generator_count = w.region.size();
    // conjugation relations: moving a rotation generator by another
    // absorbed rotation lands on the rotation of the image element
    int emitted = 0;
    for (Gid c : w.representatives) {
      Word g = model.rotation(c);
      for (Gid y : members) {
        if (emitted >= conjugation_budget) break;
        auto img = model.apply(g, y);
        if (!img) continue;
        Word expect = model.rotation(*img);
        Word rel = calc.mul(calc.inverse(expect),
                            calc.mul(g, calc.mul(model.rotation(y), calc.inverse(g))));
        if (!calc.trivial(rel))
          throw contradiction_error("conjugation relation fails the multiplication check");
        p.conjugation_relators.push_back(rel);
        ++emitted;
      }
    }
  }

  return p;
}

Json presentation_json(const GraphProductModel& model, const Presentation& p) {
  (void)model;
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json syl = Json::array();
    for (const auto& s : g.word.syl)
      syl.push_back(Json::array({s.gen, s.exp}));
    gens.push_back(Json{{"element", id_json(g.element)}, {"word", syl}});
  }
  Json rels = Json::array();
  for (const auto& r : p.relators) {
    Json conj = Json::array();
    for (const auto& s : r.conjugator.syl) conj.push_back(Json::array({s.gen, s.exp}));
    rels.push_back(Json{{"left", r.left},
                        {"right", r.right},
                        {"conjugator", conj},
                        {"left_element", id_json(r.left_element)},
                        {"conjugated_element", id_json(r.conjugated_element)}});
  }
  Json j{{"form", p.form == PresentationForm::Transversal ? "transversal" : "closure"},
         {"complete_within_radius", p.complete_within_radius},
         {"generators", gens},
         {"relators", rels}};
  if (p.form == PresentationForm::Closure) {
    j["closure_generators"] = p.closure_generator_count;
    j["conjugation_relators"] = static_cast<long>(p.conjugation_relators.size());
  }
  return j;
}

Json trace_json(const GraphProductModel& model, const StepRecord& r) {
  (void)model;
  Json osc = Json::array();
  for (const auto& e : r.osculators) osc.push_back(id_json(e));
  Json sizes = Json::array();
  for (long s : r.region_sizes) sizes.push_back(s);
  return Json{{"step", r.step},
              {"j0", r.j0},
              {"kind", r.kind},
              {"osculators", osc},
              {"region_sizes", sizes},
              {"convexity_level", r.convexity_level},
              {"partial", r.partial},
              {"tree", Json{{"black", r.tree_black},
                            {"white", r.tree_white},
                            {"depth", r.tree_depth}}}};
}

RunResult run_windmill(const GraphProductModel& model, int budget,
                       PresentationForm form) {
  const auto& sys = model.system();
  const Ladder& ladder = model.ladder();
  RunResult res;
  Windmill w = windmill_init(model);

  int consecutive_trivial = 0;
  for (int step = 1; step <= budget; ++step) {
    auto osc = find_osculators(model, w);
    if (osc.kind == OsculatorFind::Kind::Absorbed) {
      res.absorbed = true;
      break;
    }

    StepRecord rec;
    rec.step = step;
    rec.j0 = w.j0;
    switch (osc.kind) {
      case OsculatorFind::Kind::Gap: rec.kind = "gap"; break;
      case OsculatorFind::Kind::Neighbor: rec.kind = "neighbor"; break;
      default: rec.kind = "trivial"; break;
    }
    for (Gid g : osc.members) rec.osculators.push_back(sys.id(g));

    if (!osc.members.empty()) {
      auto tcheck = principal_tree(model, w, osc);
      if (!tcheck.ok)
        throw contradiction_error("principal tree check: " + tcheck.diagnostic);
      rec.tree_black = tcheck.tree.blacks();
      rec.tree_white = tcheck.tree.whites();
      rec.tree_depth = tcheck.tree.depth;
      rec.tree_lower_checked = tcheck.lower_checked;
      rec.tree_upper_checked = tcheck.upper_checked;
    }

    auto out = unfold_step(model, w, osc);
    w = std::move(out.next);
    rec.partial = out.partial;
    rec.convexity_level = osc.kind == OsculatorFind::Kind::Neighbor
                              ? ladder.c_star.str()
                              : ladder.shifted(w.j0)[size_t(w.j0 - 1)].str();
    for (int c = 1; c <= sys.m(); ++c) rec.region_sizes.push_back(w.coord_size(c));
    res.trace.push_back(rec);
    res.steps = step;

    if (osc.kind == OsculatorFind::Kind::Trivial) {
      if (++consecutive_trivial >= sys.m()) {
        // a full cycle without progress: the theory promises an osculator
        // somewhere as long as something is missing
        bool any = false;
        Rational nlev = neighbor_level(ladder);
        for (Gid cand = 0; cand < sys.total() && !any; ++cand) {
          if (w.region.contains(cand)) continue;
          try {
            any = osculation_set(model.metrics(), w.region, cand, nlev, ladder.kappa)
                      .members.empty();
          } catch (const usage_error&) {
          }
        }
        if (!any)
          throw contradiction_error(
              "region is convex, incomplete, and admits no osculator in any coordinate");
        consecutive_trivial = 0;  // an osculator exists; later coordinates will see it
      }
    } else {
      consecutive_trivial = 0;
    }
  }
  if (!res.absorbed && res.steps >= budget) res.budget_hit = true;

  res.presentation = emit_presentation(model, w, form);
  res.final_state = std::move(w);
  return res;
}

}  // namespace compro
