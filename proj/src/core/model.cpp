#include "core/model.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "core/axioms.hpp"
#include "core/errors.hpp"

namespace compro {

// ---------------------------------------------------------------------------
// Graph-product model

namespace {

// Deterministic exponent order: 1, -1, q, -q, ... by (|e|, sign).
bool exp_less(std::int64_t a, std::int64_t b) {
  std::int64_t aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
  if (aa != ab) return aa < ab;
  return a > b;  // positive first
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.syl[i].gen != b.syl[i].gen) return a.syl[i].gen < b.syl[i].gen;
    if (a.syl[i].exp != b.syl[i].exp) return exp_less(a.syl[i].exp, b.syl[i].exp);
  }
  return false;
}

}  // namespace

GraphProductModel::GraphProductModel(const GraphProductSpec& spec)
    : spec_(spec),
      graph_(spec.m),
      calc_(graph_, 0),
      quotient_(graph_, spec.q),
      syllable_cap_(std::max(1, spec.radius / 2)) {
  for (auto [i, j] : spec.edges) graph_.add_edge(i, j);
  star_.assign(size_t(spec.m), std::vector<bool>(size_t(spec.m), false));
  for (int i = 1; i <= spec.m; ++i) {
    star_[size_t(i - 1)][size_t(i - 1)] = true;
    for (int j = 1; j <= spec.m; ++j)
      if (j != i && graph_.commute(i, j)) star_[size_t(i - 1)][size_t(j - 1)] = true;
  }
}

std::string GraphProductModel::key(int coord, const Word& w) const {
  std::string k = std::to_string(coord) + "|";
  for (const auto& s : w.syl)
    k += std::to_string(s.gen) + "^" + std::to_string(s.exp) + ".";
  return k;
}

void GraphProductModel::materialize() {
  // every exponent reachable within the window
  std::vector<std::int64_t> window;
  for (int v = -spec_.q_range; v <= spec_.q_range; ++v)
    for (int u = -spec_.unit_range; u <= spec_.unit_range; ++u) {
      std::int64_t e = std::int64_t(v) * spec_.q + u;
      if (e == 0) continue;
      if (!spec_.mixed && v != 0 && u != 0) continue;
      window.push_back(e);
    }
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());

  // enumerate normal-form syllable strings up to the cap, canonicalize as
  // coset representatives, dedupe
  std::vector<Word> frontier{Word{}};
  std::vector<std::vector<Word>> reps_per_coord(size_t(spec_.m));
  std::vector<std::set<std::string>> seen(size_t(spec_.m));
  for (int c = 1; c <= spec_.m; ++c) {
    Word canon = calc_.coset_canonical(Word{}, star_[size_t(c - 1)]);
    seen[size_t(c - 1)].insert(key(c, canon));
    reps_per_coord[size_t(c - 1)].push_back(canon);
  }
  for (int len = 1; len <= syllable_cap_; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int g = 1; g <= spec_.m; ++g) {
        for (std::int64_t e : window) {
          Word cand = w;
          cand.syl.push_back({g, e});
          Word norm = calc_.normal(cand);
          if (norm.size() != size_t(len)) continue;  // merged or reordered: skip
          if (!(norm == cand)) continue;             // only keep normal spellings
          next.push_back(norm);
          for (int c = 1; c <= spec_.m; ++c) {
            Word canon = calc_.coset_canonical(norm, star_[size_t(c - 1)]);
            if (canon.size() > size_t(syllable_cap_)) continue;
            auto k = key(c, canon);
            if (seen[size_t(c - 1)].insert(k).second)
              reps_per_coord[size_t(c - 1)].push_back(canon);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  sys_ = std::make_unique<CompositeSystem>(spec_.m, Rational(0));
  for (int c = 1; c <= spec_.m; ++c) {
    auto& list = reps_per_coord[size_t(c - 1)];
    std::sort(list.begin(), list.end(), word_less);
    for (auto& w : list) {
      sys_->add_element(c);
      reps_.push_back(w);
    }
  }
  sys_->seal();
  for (Gid g = 0; g < sys_->total(); ++g)
    index_[key(sys_->coord_of(g), reps_[size_t(g)])] = g;

  // activity: conjugate cyclic subgroups that commute are inactive
  std::vector<Word> conj(reps_.size());
  for (Gid g = 0; g < sys_->total(); ++g) {
    Word a;
    a.syl.push_back({sys_->coord_of(g), 1});
    conj[size_t(g)] = calc_.conjugate(reps_[size_t(g)], a);
  }
  for (Gid a = 0; a < sys_->total(); ++a)
    for (Gid b = a + 1; b < sys_->total(); ++b) {
      if (sys_->coord_of(a) == sys_->coord_of(b)) continue;  // mates stay active
      bool off = calc_.commute_elements(conj[size_t(a)], conj[size_t(b)]);
      if (off) sys_->set_active(a, b, false);
      else sys_->set_active(a, b, true);
    }

  // projection table: divergence exponent of every element at every
  // viewpoint, so distance queries inside the truncation are table lookups
  proj_tab_.assign(reps_.size(), std::vector<std::int64_t>(reps_.size(), 0));
  for (Gid y = 0; y < sys_->total(); ++y)
    for (Gid x = 0; x < sys_->total(); ++x)
      if (x != y) proj_tab_[size_t(y)][size_t(x)] = proj_word(y, reps_[size_t(x)]);

  GraphProductModel* self = this;
  sys_->set_dpi_callback([self](Gid y, Gid x, Gid z) -> std::optional<Rational> {
    std::int64_t d =
        self->proj_tab_[size_t(y)][size_t(x)] - self->proj_tab_[size_t(y)][size_t(z)];
    if (d < 0) d = -d;
    return self->spec_.weight * Rational(d);
  });
  metrics_ = std::make_unique<Metrics>(*sys_);
}

Locus GraphProductModel::canonical(int coord, const Word& w) const {
  return {coord, calc_.coset_canonical(w, star_[size_t(coord - 1)])};
}

std::optional<Gid> GraphProductModel::find(int coord, const Word& w) const {
  auto canon = canonical(coord, w);
  auto it = index_.find(key(coord, canon.rep));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Gid> GraphProductModel::apply(const Word& w, Gid g) const {
  Word moved = calc_.mul(w, reps_[size_t(g)]);
  return find(sys_->coord_of(g), moved);
}

Locus GraphProductModel::apply_locus(const Word& w, const Locus& l) const {
  return canonical(l.coord, calc_.mul(w, l.rep));
}

Word GraphProductModel::rotation(Gid y, std::int64_t k) const {
  return rotation(locus(y), k);
}

Word GraphProductModel::rotation(const Locus& y, std::int64_t k) const {
  Word p;
  p.syl.push_back({y.coord, k * spec_.q});
  return calc_.conjugate(y.rep, p);
}

std::int64_t GraphProductModel::proj_word(Gid y, const Word& xrep) const {
  int gen = sys_->coord_of(y);
  Word u = calc_.mul(calc_.inverse(reps_[size_t(y)]), xrep);
  for (size_t i = 0; i < u.size(); ++i) {
    if (u.syl[i].gen != gen) continue;
    bool front = true;
    for (size_t k = 0; k < i; ++k) {
      if (!graph_.commute(u.syl[k].gen, gen)) {
        front = false;
        break;
      }
    }
    if (front) return u.syl[i].exp;
    break;  // a blocked divergence syllable hides any later one
  }
  return 0;
}

std::int64_t GraphProductModel::proj(Gid y, const Locus& x) const {
  if (auto g = find(x.coord, x.rep)) return proj_tab_[size_t(y)][size_t(*g)];
  return proj_word(y, x.rep);
}

Rational GraphProductModel::dpi_locus(Gid y, const Locus& x, const Locus& z) const {
  std::int64_t d = proj(y, x) - proj(y, z);
  if (d < 0) d = -d;
  return spec_.weight * Rational(d);
}

bool GraphProductModel::active_locus(Gid y, const Locus& x) const {
  if (auto g = find(x.coord, x.rep)) return sys_->active(y, *g) || *g == y;
  Word a;
  a.syl.push_back({x.coord, 1});
  Word cx = calc_.conjugate(x.rep, a);
  Word b;
  b.syl.push_back({sys_->coord_of(y), 1});
  Word cy = calc_.conjugate(reps_[size_t(y)], b);
  return !calc_.commute_elements(cx, cy);
}

std::unique_ptr<GraphProductModel> GraphProductModel::build(const GraphProductSpec& in) {
  GraphProductSpec spec = in;
  if (spec.radius < 3) throw usage_error("graph-product radius must be at least 3");
  if (spec.m < 1) throw usage_error("graph-product needs at least one generator");
  if (!(spec.weight > Rational(0))) throw usage_error("weight must be positive");

  if (spec.q == 0) {
    // bootstrap: calibrate on a provisional truncation, then size q
    GraphProductSpec prov = spec;
    prov.q = 5;
    prov.radius = std::min(spec.radius, 4);
    prov.allow_unsafe = true;
    std::unique_ptr<GraphProductModel> pm(new GraphProductModel(prov));
    pm->materialize();
    auto cal = calibrate_constants(pm->metrics());
    if (!cal.ok)
      throw usage_error("auto q: provisional calibration failed: " + cal.failure);
    Rational need = (cal.ladder.Theta_Rot + cal.ladder.Theta_P) / spec.weight;
    std::int64_t q = need.num() / need.den();
    while (Rational(q) < need) ++q;  // ceil
    spec.q = q + 1;
  }
  if (spec.q < 1) throw usage_error("rotation exponent q must be positive");

  std::unique_ptr<GraphProductModel> model(new GraphProductModel(spec));
  model->materialize();

  model->axioms_ = check_axioms(model->system(), model->system().theta());
  if (!model->axioms_.pass())
    throw usage_error("generated truncation fails the axiom check; refusing model");

  auto cal = calibrate_constants(model->metrics());
  if (!cal.ok) throw usage_error("model calibration failed: " + cal.failure);
  model->ladder_ = cal.ladder;
  // calibration verified the coarse-equality band exhaustively, so
  // threshold decisions may now run off raw distances
  model->metrics_->set_kappa_hint(model->ladder_.kappa);

  // rotations must clear the rotation threshold from anywhere inside the
  // close-projection band
  Rational strength = model->spec_.weight * Rational(model->spec_.q);
  if (!(strength - model->ladder_.Theta_P >= model->ladder_.Theta_Rot)) {
    if (!spec.allow_unsafe)
      throw usage_error("rotation exponent too small: need D*q - Theta_P >= Theta_Rot, "
                        "got D*q = " + strength.str() + " against Theta_P = " +
                        model->ladder_.Theta_P.str() + ", Theta_Rot = " +
                        model->ladder_.Theta_Rot.str());
  }
  return model;
}

// ---------------------------------------------------------------------------
// Tree-segment model

namespace {

struct Tree {
  int n = 0;
  std::vector<std::vector<int>> adj;

  std::vector<int> bfs_dist(const std::vector<int>& sources) const {
    std::vector<int> dist(size_t(n), -1);
    std::deque<int> q;
    for (int s : sources) {
      dist[size_t(s)] = 0;
      q.push_back(s);
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[size_t(v)])
        if (dist[size_t(w)] < 0) {
          dist[size_t(w)] = dist[size_t(v)] + 1;
          q.push_back(w);
        }
    }
    return dist;
  }

  std::vector<int> path(int a, int b) const {
    std::vector<int> parent(size_t(n), -1);
    std::deque<int> q{a};
    parent[size_t(a)] = a;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (v == b) break;
      for (int w : adj[size_t(v)])
        if (parent[size_t(w)] < 0) {
          parent[size_t(w)] = v;
          q.push_back(w);
        }
    }
    std::vector<int> p;
    for (int v = b; v != a; v = parent[size_t(v)]) p.push_back(v);
    p.push_back(a);
    std::reverse(p.begin(), p.end());
    return p;
  }
};

int shared_edges(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<std::pair<int, int>> ea;
  for (size_t i = 0; i + 1 < a.size(); ++i)
    ea.insert(std::minmax(a[i], a[i + 1]));
  int cnt = 0;
  for (size_t i = 0; i + 1 < b.size(); ++i)
    if (ea.count(std::minmax(b[i], b[i + 1]))) ++cnt;
  return cnt;
}

}  // namespace

TreeSegmentsResult gen_tree_segments(const TreeSegmentsSpec& spec) {
  TreeSegmentsResult res;
  Tree tree;
  std::vector<TreeSegmentsSpec::Segment> segs = spec.segments;

  if (!spec.edges.empty()) {
    int n = 0;
    for (auto [a, b] : spec.edges) n = std::max({n, a + 1, b + 1});
    tree.n = n;
    tree.adj.assign(size_t(n), {});
    for (auto [a, b] : spec.edges) {
      tree.adj[size_t(a)].push_back(b);
      tree.adj[size_t(b)].push_back(a);
    }
    res.tree_edges = spec.edges;
    res.seed = 0;
  } else {
    std::mt19937_64 rng(spec.seed);
    res.seed = spec.seed;
    int n = std::max(2, spec.vertices);
    tree.n = n;
    tree.adj.assign(size_t(n), {});
    for (int v = 1; v < n; ++v) {
      int p = static_cast<int>(rng() % std::uint64_t(v));
      tree.adj[size_t(v)].push_back(p);
      tree.adj[size_t(p)].push_back(v);
      res.tree_edges.emplace_back(p, v);
    }
    std::set<std::pair<int, int>> used;
    for (int s = 0; s < spec.segment_count; ++s) {
      int a = static_cast<int>(rng() % std::uint64_t(n));
      int b = static_cast<int>(rng() % std::uint64_t(n));
      if (used.count(std::minmax(a, b))) continue;
      used.insert(std::minmax(a, b));
      segs.push_back({a, b, 0});
    }
  }

  // validate explicit segments and build paths
  std::vector<std::vector<int>> paths;
  for (const auto& s : segs) {
    if (s.a < 0 || s.b < 0 || s.a >= tree.n || s.b >= tree.n)
      throw usage_error("segment endpoint out of range");
    paths.push_back(tree.path(s.a, s.b));
  }

  // greedy coloring: same-color segments must stay inside the overlap budget
  int colors = 0;
  std::vector<int> color(paths.size(), 0);
  for (size_t i = 0; i < paths.size(); ++i) {
    if (segs[i].color > 0) {
      color[i] = segs[i].color;
      colors = std::max(colors, color[i]);
      continue;
    }
    int c = 1;
    for (; c <= colors; ++c) {
      bool ok = true;
      for (size_t k = 0; k < i; ++k)
        if (color[k] == c && shared_edges(paths[i], paths[k]) > spec.overlap) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    if (c > colors) {
      if (spec.edges.empty() && colors >= spec.max_colors) {
        color[i] = -1;  // dropped: would need one color too many
        continue;
      }
      colors = c;
    }
    color[i] = c;
  }

  // verify explicit coloring respects the activity rule
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t k = i + 1; k < paths.size(); ++k)
      if (color[i] > 0 && color[i] == color[k] &&
          shared_edges(paths[i], paths[k]) > spec.overlap)
        throw usage_error("same-color segments overlap beyond the activity budget");

  int m = std::max(1, colors);
  auto sys = std::make_unique<CompositeSystem>(m, Rational(spec.overlap));
  std::vector<size_t> kept;
  // keep declaration order within each color
  for (int c = 1; c <= m; ++c)
    for (size_t i = 0; i < paths.size(); ++i)
      if (color[i] == c) {
        sys->add_element(c);
        kept.push_back(i);
      }
  sys->seal();

  std::vector<std::vector<int>> seg_vertices;
  for (size_t gi = 0; gi < kept.size(); ++gi) seg_vertices.push_back(paths[kept[gi]]);

  // activity by overlap budget, uniformly across colors
  for (Gid a = 0; a < sys->total(); ++a)
    for (Gid b = a + 1; b < sys->total(); ++b) {
      bool on = shared_edges(seg_vertices[size_t(a)], seg_vertices[size_t(b)]) <=
                spec.overlap;
      if (sys->coord_of(a) == sys->coord_of(b) && !on)
        throw usage_error("coloring violated the activity rule");
      sys->set_active(a, b, on);
    }

  // gates: nearest-point projections of each segment onto each active mate
  // dpi_Y(X,Z) = diameter of the union of the gate sets of X and Z on Y
  std::vector<std::vector<int>> dist_from_seg;  // per gid: distance to segment
  for (const auto& path : seg_vertices) dist_from_seg.push_back(tree.bfs_dist(path));

  auto gates = [&](Gid onto, Gid of) {
    // vertices of segment `onto` nearest to segment `of`: for each vertex of
    // `of`, walk the distance field of `onto` downhill
    const auto& donto = dist_from_seg[size_t(onto)];
    std::set<int> g;
    for (int v : seg_vertices[size_t(of)]) {
      int cur = v;
      while (donto[size_t(cur)] > 0) {
        for (int w : tree.adj[size_t(cur)])
          if (donto[size_t(w)] == donto[size_t(cur)] - 1) {
            cur = w;
            break;
          }
      }
      g.insert(cur);
    }
    return g;
  };

  for (Gid y = 0; y < sys->total(); ++y) {
    std::vector<std::set<int>> gate_of(size_t(sys->total()));
    for (Gid x = 0; x < sys->total(); ++x)
      if (x != y && sys->active(y, x)) gate_of[size_t(x)] = gates(y, x);
    for (Gid x = 0; x < sys->total(); ++x) {
      if (x == y || !sys->active(y, x)) continue;
      for (Gid z = x; z < sys->total(); ++z) {
        if (z == y || !sys->active(y, z)) continue;
        // diameter of the union of gates, measured in the tree
        std::vector<int> uni(gate_of[size_t(x)].begin(), gate_of[size_t(x)].end());
        uni.insert(uni.end(), gate_of[size_t(z)].begin(), gate_of[size_t(z)].end());
        int diam = 0;
        for (size_t i = 0; i < uni.size(); ++i) {
          auto d = tree.bfs_dist({uni[i]});
          for (size_t k = i + 1; k < uni.size(); ++k)
            diam = std::max(diam, d[size_t(uni[k])]);
        }
        sys->set_dpi_sym(y, x, z, Rational(diam));
      }
    }
  }

  res.system = std::move(sys);
  res.segment_vertices = std::move(seg_vertices);
  return res;
}

// ---------------------------------------------------------------------------
// Adversarial instances

std::optional<AdversarialKind> adversarial_kind_from(const std::string& name) {
  if (name == "asymmetric-dpi") return AdversarialKind::AsymmetricDpi;
  if (name == "behrstock-break") return AdversarialKind::BehrstockBreak;
  if (name == "separation-break") return AdversarialKind::SeparationBreak;
  if (name == "rotation-too-small") return AdversarialKind::RotationTooSmall;
  return std::nullopt;
}

std::string adversarial_kind_name(AdversarialKind k) {
  switch (k) {
    case AdversarialKind::AsymmetricDpi: return "asymmetric-dpi";
    case AdversarialKind::BehrstockBreak: return "behrstock-break";
    case AdversarialKind::SeparationBreak: return "separation-break";
    default: return "rotation-too-small";
  }
}

std::unique_ptr<CompositeSystem> gen_adversarial(AdversarialKind kind,
                                                 const Rational& theta) {
  // one value just above every theta-parameterized bound
  Rational over = theta * Rational(3) + Rational(1);
  switch (kind) {
    case AdversarialKind::AsymmetricDpi: {
      auto sys = std::make_unique<CompositeSystem>(1, theta);
      sys->add_element(1);  // Y
      sys->add_element(1);  // X
      sys->add_element(1);  // Z
      sys->seal();
      sys->set_dpi(0, 1, 2, Rational(2));
      sys->set_dpi(0, 2, 1, Rational(3));
      return sys;
    }
    case AdversarialKind::BehrstockBreak: {
      auto sys = std::make_unique<CompositeSystem>(1, theta);
      sys->add_element(1);  // Y
      sys->add_element(1);  // Z
      sys->add_element(1);  // X
      sys->seal();
      sys->set_dpi_sym(0, 2, 1, over);  // d_Y(X,Z)
      sys->set_dpi_sym(1, 2, 0, over);  // d_Z(X,Y)
      return sys;
    }
    case AdversarialKind::SeparationBreak: {
      auto sys = std::make_unique<CompositeSystem>(1, theta);
      sys->add_element(1);  // Y
      sys->add_element(1);  // Z
      sys->seal();
      Rational two_over = theta * Rational(2) + Rational(1);
      sys->set_dpi(0, 1, 1, two_over);  // d_Y(Z,Z)
      return sys;
    }
    default:
      throw usage_error(
          "rotation-too-small is model-backed; build it from a model spec with q = 1");
  }
}

// ---------------------------------------------------------------------------
// Model spec files

ModelSpec parse_model_spec(const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind"))
    throw usage_error("model spec needs a 'kind' field");
  ModelSpec spec;
  spec.kind = doc.at("kind").get<std::string>();
  if (doc.contains("theta"))
    spec.theta = Rational::parse(doc.at("theta").get<std::string>());

  if (spec.kind == "graph-product") {
    auto& g = spec.graph_product;
    if (doc.contains("m")) g.m = doc.at("m").get<int>();
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges"))
        g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (doc.contains("q")) {
      if (doc.at("q").is_string() && doc.at("q").get<std::string>() == "auto")
        g.q = 0;
      else
        g.q = doc.at("q").get<std::int64_t>();
    }
    if (doc.contains("D")) g.weight = Rational::parse(doc.at("D").get<std::string>());
    if (doc.contains("radius")) g.radius = doc.at("radius").get<int>();
    if (doc.contains("unit_range")) g.unit_range = doc.at("unit_range").get<int>();
    if (doc.contains("q_range")) g.q_range = doc.at("q_range").get<int>();
    if (doc.contains("mixed")) g.mixed = doc.at("mixed").get<bool>();
    if (doc.contains("allow_unsafe")) g.allow_unsafe = doc.at("allow_unsafe").get<bool>();
  } else if (spec.kind == "tree-segments") {
    auto& t = spec.tree_segments;
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges"))
        t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (doc.contains("segments"))
      for (const auto& s : doc.at("segments")) {
        TreeSegmentsSpec::Segment seg;
        seg.a = s.at("ends").at(0).get<int>();
        seg.b = s.at("ends").at(1).get<int>();
        if (s.contains("color")) seg.color = s.at("color").get<int>();
        t.segments.push_back(seg);
      }
    if (doc.contains("seed")) t.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("vertices")) t.vertices = doc.at("vertices").get<int>();
    if (doc.contains("segment_count")) t.segment_count = doc.at("segment_count").get<int>();
    if (doc.contains("overlap")) t.overlap = doc.at("overlap").get<int>();
    if (doc.contains("max_colors")) t.max_colors = doc.at("max_colors").get<int>();
  } else if (spec.kind == "adversarial") {
    if (!doc.contains("break"))
      throw usage_error("adversarial spec needs a 'break' field");
    auto k = adversarial_kind_from(doc.at("break").get<std::string>());
    if (!k) throw usage_error("unknown adversarial kind");
    spec.adversarial = *k;
  } else {
    throw usage_error("unknown model kind '" + spec.kind + "'");
  }
  return spec;
}

Json model_spec_json(const ModelSpec& spec) {
  Json doc{{"kind", spec.kind}, {"theta", spec.theta.str()}};
  if (spec.kind == "graph-product") {
    const auto& g = spec.graph_product;
    Json edges = Json::array();
    for (auto [a, b] : g.edges) edges.push_back(Json::array({a, b}));
    doc["m"] = g.m;
    doc["edges"] = edges;
    doc["q"] = g.q == 0 ? Json("auto") : Json(g.q);
    doc["D"] = g.weight.str();
    doc["radius"] = g.radius;
    doc["unit_range"] = g.unit_range;
    doc["q_range"] = g.q_range;
    doc["mixed"] = g.mixed;
  } else if (spec.kind == "tree-segments") {
    const auto& t = spec.tree_segments;
    if (!t.edges.empty()) {
      Json edges = Json::array();
      for (auto [a, b] : t.edges) edges.push_back(Json::array({a, b}));
      doc["edges"] = edges;
      Json segs = Json::array();
      for (const auto& s : t.segments) {
        Json seg{{"ends", Json::array({s.a, s.b})}};
        if (s.color > 0) seg["color"] = s.color;
        segs.push_back(seg);
      }
      doc["segments"] = segs;
    } else {
      doc["seed"] = t.seed;
      doc["vertices"] = t.vertices;
      doc["segment_count"] = t.segment_count;
      doc["max_colors"] = t.max_colors;
    }
    doc["overlap"] = t.overlap;
  } else {
    doc["break"] = adversarial_kind_name(spec.adversarial);
  }
  return doc;
}

}  // namespace compro
