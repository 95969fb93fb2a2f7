#pragma once

// Test-only oracles, independent of the library's computation paths: plain
// breadth-first tree projections, brute-force enumeration of the stabilizing
// pair family and its minima, and a stack reducer for free products. The
// expected values frozen in the tests come from these.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "core/metrics.hpp"
#include "core/system.hpp"
#include "core/words.hpp"

namespace oracle {

using compro::CompositeSystem;
using compro::Gid;
using compro::Rational;

struct Tree {
  std::vector<std::vector<int>> adj;

  static Tree path(int n) {
    Tree t;
    t.adj.assign(size_t(n), {});
    for (int v = 0; v + 1 < n; ++v) {
      t.adj[size_t(v)].push_back(v + 1);
      t.adj[size_t(v + 1)].push_back(v);
    }
    return t;
  }

  std::vector<int> dist(int s) const {
    std::vector<int> d(adj.size(), -1);
    std::deque<int> q{s};
    d[size_t(s)] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[size_t(v)])
        if (d[size_t(w)] < 0) {
          d[size_t(w)] = d[size_t(v)] + 1;
          q.push_back(w);
        }
    }
    return d;
  }
};

// nearest-point projection of a vertex set onto a segment, by exhaustive
// distance comparison (no gate theory)
inline std::set<int> project(const Tree& t, const std::vector<int>& segment,
                             const std::vector<int>& of) {
  std::set<int> out;
  for (int v : of) {
    auto d = t.dist(v);
    int best = segment.front();
    for (int s : segment)
      if (d[size_t(s)] < d[size_t(best)]) best = s;
    // collect every nearest vertex, not just one
    for (int s : segment)
      if (d[size_t(s)] == d[size_t(best)]) out.insert(s);
  }
  return out;
}

inline int diameter(const Tree& t, const std::set<int>& verts) {
  int diam = 0;
  for (int a : verts) {
    auto d = t.dist(a);
    for (int b : verts) diam = std::max(diam, d[size_t(b)]);
  }
  return diam;
}

// brute-force re-derivation of the stabilizing family of a pair: every
// replacement pair that both endpoints see strictly beyond twice theta
inline std::vector<std::pair<Gid, Gid>> family(const CompositeSystem& sys, Gid x,
                                               Gid z) {
  std::vector<std::pair<Gid, Gid>> fam{{x, z}};
  Rational bar = sys.theta() * Rational(2);
  const auto& coord = sys.coordinate(sys.coord_of(x));
  for (Gid zp : coord) {
    if (zp == z) continue;
    auto v = sys.dpi(z, x, zp);
    if (v && *v > bar) fam.emplace_back(x, zp);
  }
  for (Gid xp : coord) {
    if (xp == x) continue;
    auto v = sys.dpi(x, xp, z);
    if (v && *v > bar) fam.emplace_back(xp, z);
  }
  for (Gid xp : coord)
    for (Gid zp : coord) {
      if (xp == x || zp == z) continue;
      auto a = sys.dpi(x, xp, zp);
      auto b = sys.dpi(z, xp, zp);
      if (a && b && *a > bar && *b > bar) fam.emplace_back(xp, zp);
    }
  return fam;
}

inline std::optional<Rational> dY(const CompositeSystem& sys, Gid y, Gid x, Gid z) {
  if (x == z) return Rational(0);
  std::optional<Rational> best;
  for (auto [xp, zp] : family(sys, x, z)) {
    if (xp == y || zp == y) continue;
    auto v = sys.dpi(y, xp, zp);
    if (v && (!best || *v < *best)) best = *v;
  }
  return best;
}

// free-reduction oracle for words in a free product of two cyclic groups:
// syllables merge only when adjacent with the same generator
inline compro::Word free_product_reduce(const compro::Word& w) {
  compro::Word out;
  for (const auto& s : w.syl) {
    if (s.exp == 0) continue;
    if (!out.syl.empty() && out.syl.back().gen == s.gen) {
      out.syl.back().exp += s.exp;
      if (out.syl.back().exp == 0) out.syl.pop_back();
    } else {
      out.syl.push_back(s);
    }
  }
  return out;
}

}  // namespace oracle
