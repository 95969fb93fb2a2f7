#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/metrics.hpp"

namespace compro {

/// Graph on one coordinate: X,Z span an edge exactly when no third element
/// of the coordinate sees them at distance >= K. Carries empirical
/// diagnostics only; no structural claims are made about the graph.
struct ProjectionComplex {
  int coord = 0;
  Rational K;
  std::vector<Gid> vertices;
  std::vector<std::pair<Gid, Gid>> edges;  // ordered pairs a < b
  bool connected = false;
  // max over sampled geodesic edges of the replacement distance once the
  // edge is removed; 0 on edgeless graphs, -1 encodes "removal disconnects"
  long bottleneck = 0;

  bool has_edge(Gid a, Gid b) const;
  std::vector<std::vector<int>> adjacency() const;  // indices into vertices
};

ProjectionComplex build_projection_complex(const Metrics& mx, int coord,
                                           const Rational& K,
                                           const Ladder* ladder = nullptr);

/// DOT text with stable vertex order and labels "c<coord>_<index>".
std::string complex_dot(const CompositeSystem& sys, const ProjectionComplex& pc);

}  // namespace compro
