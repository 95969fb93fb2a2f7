#include "core/complex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "core/calibrate.hpp"
#include "core/errors.hpp"

namespace compro {

bool ProjectionComplex::has_edge(Gid a, Gid b) const {
  if (a > b) std::swap(a, b);
  return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

std::vector<std::vector<int>> ProjectionComplex::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  auto pos = [&](Gid g) {
    return int(std::find(vertices.begin(), vertices.end(), g) - vertices.begin());
  };
  for (const auto& [a, b] : edges) {
    int ia = pos(a), ib = pos(b);
    adj[size_t(ia)].push_back(ib);
    adj[size_t(ib)].push_back(ia);
  }
  return adj;
}

namespace {

// BFS distance with one edge suppressed; -1 when unreachable
long bfs_dist(const std::vector<std::vector<int>>& adj, int from, int to, int skip_a,
              int skip_b) {
  std::vector<long> dist(adj.size(), -1);
  std::deque<int> q{from};
  dist[size_t(from)] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (v == to) return dist[size_t(v)];
    for (int w : adj[size_t(v)]) {
      if ((v == skip_a && w == skip_b) || (v == skip_b && w == skip_a)) continue;
      if (dist[size_t(w)] < 0) {
        dist[size_t(w)] = dist[size_t(v)] + 1;
        q.push_back(w);
      }
    }
  }
  return -1;
}

}  // namespace

ProjectionComplex build_projection_complex(const Metrics& mx, int coord,
                                           const Rational& K, const Ladder* ladder) {
  const auto& sys = mx.system();
  if (coord < 1 || coord > sys.m()) throw usage_error("coordinate out of range");
  if (ladder && !(K > ladder->Theta))
    throw usage_error("complex parameter K must exceed Theta = " + ladder->Theta.str());

  ProjectionComplex pc;
  pc.coord = coord;
  pc.K = K;
  pc.vertices = sys.coordinate(coord);

  const auto& verts = pc.vertices;
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      bool witness = false;
      for (Gid y : verts) {
        if (y == verts[i] || y == verts[j]) continue;
        auto v = mx.dY(y, verts[i], verts[j]);
        if (v && *v >= K) {
          witness = true;
          break;
        }
      }
      if (!witness) pc.edges.emplace_back(verts[i], verts[j]);
    }
  }

  auto adj = pc.adjacency();
  // connectivity
  if (verts.empty()) {
    pc.connected = true;
  } else {
    std::vector<bool> seen(verts.size(), false);
    std::deque<int> q{0};
    seen[0] = true;
    size_t cnt = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[size_t(v)])
        if (!seen[size_t(w)]) {
          seen[size_t(w)] = true;
          ++cnt;
          q.push_back(w);
        }
    }
    pc.connected = cnt == verts.size();
  }

  // bottleneck diagnostic: worst detour when one geodesic edge is removed,
  // over a deterministic sample of vertex pairs
  const size_t sample_cap = 32;
  for (size_t i = 0; i < verts.size() && i < sample_cap; ++i) {
    size_t j = verts.size() - 1 - i;
    if (j <= i) break;
    // recover one geodesic by BFS parents
    std::vector<int> parent(verts.size(), -1);
    std::deque<int> q{int(i)};
    parent[i] = int(i);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[size_t(v)])
        if (parent[size_t(w)] < 0) {
          parent[size_t(w)] = v;
          q.push_back(w);
        }
    }
    if (parent[j] < 0) continue;
    int v = int(j);
    while (v != int(i)) {
      int p = parent[size_t(v)];
      long det = bfs_dist(adj, p, v, p, v);
      if (det < 0) {
        pc.bottleneck = -1;
        break;
      }
      pc.bottleneck = std::max(pc.bottleneck, det);
      v = p;
    }
    if (pc.bottleneck < 0) break;
  }
  return pc;
}

std::string complex_dot(const CompositeSystem& sys, const ProjectionComplex& pc) {
  std::ostringstream out;
  out << "graph projection_complex {\n";
  out << "  // coordinate " << pc.coord << ", K = " << pc.K.str() << "\n";
  for (Gid g : pc.vertices) out << "  \"" << sys.id(g).label() << "\";\n";
  for (const auto& [a, b] : pc.edges)
    out << "  \"" << sys.id(a).label() << "\" -- \"" << sys.id(b).label() << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace compro
