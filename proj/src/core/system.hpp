#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/rational.hpp"

namespace compro {

/// Identifies an element of the composite set: coordinate 1..m plus a
/// per-coordinate index assigned at materialization. Stable for a session;
/// equality and ordering are by (coord, index).
struct ElementId {
  int coord = 0;
  int index = 0;

  friend bool operator==(const ElementId&, const ElementId&) = default;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;

  std::string label() const {
    return "c" + std::to_string(coord) + "_" + std::to_string(index);
  }
};

/// Dense per-system element handle (index into the flattened element list).
using Gid = int;

/// The composite set with its activity relation and raw projection
/// distances d^pi. Distances are partial: an absent entry means "undefined",
/// which is distinct from a stored 0. Tables may be backed by an explicit
/// map or by a formula callback (used by generated models). Immutable after
/// construction; all queries are const.
class CompositeSystem {
 public:
  using DpiFn = std::function<std::optional<Rational>(Gid y, Gid x, Gid z)>;

  CompositeSystem(int m, Rational theta);

  int m() const { return m_; }
  const Rational& theta() const { return theta_; }

  /// Adds one element to a coordinate; returns its id. Elements are always
  /// active with their coordinate mates.
  ElementId add_element(int coord);

  int total() const { return static_cast<int>(ids_.size()); }
  int coord_size(int coord) const { return static_cast<int>(per_coord_[size_t(coord - 1)].size()); }
  const std::vector<Gid>& coordinate(int coord) const { return per_coord_[size_t(coord - 1)]; }

  Gid gid(ElementId id) const;
  ElementId id(Gid g) const { return ids_[size_t(g)]; }
  int coord_of(Gid g) const { return ids_[size_t(g)].coord; }
  bool has(ElementId id) const;

  void set_active(Gid a, Gid b, bool on = true);
  bool active(Gid a, Gid b) const { return act_[size_t(a) * total_cap_ + size_t(b)]; }
  std::vector<Gid> act_set(Gid a) const;

  /// Declares one raw distance value. Mirror entries (x,z)/(z,x) are stored
  /// independently so that deliberately asymmetric tables are representable;
  /// use set_dpi_sym for well-formed data.
  void set_dpi(Gid y, Gid x, Gid z, Rational v);
  void set_dpi_sym(Gid y, Gid x, Gid z, Rational v);

  /// Installs a formula backend consulted when no explicit entry exists.
  void set_dpi_callback(DpiFn fn) { dpi_fn_ = std::move(fn); }

  /// d^pi_Y(X,Z): defined only when X,Z lie in Act(Y)\{Y} and a value is
  /// known. Undefined never silently becomes 0.
  std::optional<Rational> dpi(Gid y, Gid x, Gid z) const;

  void flag_boundary(Gid g) { boundary_[size_t(g)] = true; }
  bool boundary(Gid g) const { return boundary_[size_t(g)]; }
  bool any_boundary() const { return any_boundary_; }

  /// Locks the element set. Must be called before distance queries; activity
  /// storage is sized here.
  void seal();
  bool sealed() const { return sealed_; }

 private:
  std::uint64_t key(Gid y, Gid x, Gid z) const {
    return (std::uint64_t(y) * total_cap_ + std::uint64_t(x)) * total_cap_ +
           std::uint64_t(z);
  }

  int m_;
  Rational theta_;
  std::vector<ElementId> ids_;
  std::vector<std::vector<Gid>> per_coord_;
  std::vector<bool> act_;
  std::vector<bool> boundary_;
  std::unordered_map<std::uint64_t, Rational> dpi_;
  DpiFn dpi_fn_;
  size_t total_cap_ = 0;
  bool sealed_ = false;
  bool any_boundary_ = false;
};

}  // namespace compro
