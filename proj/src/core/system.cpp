#include "core/system.hpp"

#include "core/errors.hpp"

namespace compro {

CompositeSystem::CompositeSystem(int m, Rational theta)
    : m_(m), theta_(std::move(theta)), per_coord_(size_t(m)) {
  if (m < 1) throw usage_error("system needs at least one coordinate");
  if (theta_ < Rational(0)) throw usage_error("theta must be non-negative");
}

ElementId CompositeSystem::add_element(int coord) {
  if (sealed_) throw std::logic_error("system already sealed");
  if (coord < 1 || coord > m_)
    throw usage_error("coordinate " + std::to_string(coord) + " out of range 1.." +
                      std::to_string(m_));
  ElementId id{coord, static_cast<int>(per_coord_[size_t(coord - 1)].size())};
  Gid g = static_cast<Gid>(ids_.size());
  ids_.push_back(id);
  per_coord_[size_t(coord - 1)].push_back(g);
  return id;
}

Gid CompositeSystem::gid(ElementId id) const {
  if (!has(id)) throw usage_error("unknown element " + id.label());
  return per_coord_[size_t(id.coord - 1)][size_t(id.index)];
}

bool CompositeSystem::has(ElementId id) const {
  return id.coord >= 1 && id.coord <= m_ && id.index >= 0 &&
         id.index < static_cast<int>(per_coord_[size_t(id.coord - 1)].size());
}

void CompositeSystem::seal() {
  if (sealed_) return;
  total_cap_ = ids_.size();
  act_.assign(total_cap_ * total_cap_, false);
  boundary_.assign(total_cap_, false);
  // coordinate mates are always mutually active
  for (const auto& coord : per_coord_)
    for (Gid a : coord)
      for (Gid b : coord) act_[size_t(a) * total_cap_ + size_t(b)] = true;
  sealed_ = true;
}

void CompositeSystem::set_active(Gid a, Gid b, bool on) {
  if (!sealed_) throw std::logic_error("seal() before set_active");
  act_[size_t(a) * total_cap_ + size_t(b)] = on;
  act_[size_t(b) * total_cap_ + size_t(a)] = on;
}

std::vector<Gid> CompositeSystem::act_set(Gid a) const {
  std::vector<Gid> out;
  for (Gid b = 0; b < total(); ++b)
    if (active(a, b)) out.push_back(b);
  return out;
}

void CompositeSystem::set_dpi(Gid y, Gid x, Gid z, Rational v) {
  if (!sealed_) throw std::logic_error("seal() before set_dpi");
  dpi_[key(y, x, z)] = std::move(v);
}

void CompositeSystem::set_dpi_sym(Gid y, Gid x, Gid z, Rational v) {
  set_dpi(y, x, z, v);
  set_dpi(y, z, x, std::move(v));
}

std::optional<Rational> CompositeSystem::dpi(Gid y, Gid x, Gid z) const {
  if (x == y || z == y) return std::nullopt;
  if (!active(y, x) || !active(y, z)) return std::nullopt;
  if (!dpi_.empty()) {
    auto it = dpi_.find(key(y, x, z));
    if (it != dpi_.end()) return it->second;
  }
  if (dpi_fn_) return dpi_fn_(y, x, z);
  return std::nullopt;
}

}  // namespace compro
