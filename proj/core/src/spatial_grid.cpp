#include "spherefill/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spherefill/errors.hpp"

namespace spherefill {

namespace {
constexpr double kMaxCells = 64.0 * 1024.0 * 1024.0;
}

SpatialGrid::SpatialGrid(const Box& bounds, double cell_size) : bounds_(bounds), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw DomainError("grid cell size must be positive");
  const Vec3 size = bounds.size();
  double total = 1.0;
  for (std::size_t a = 0; a < 3; ++a) {
    if (!(size[a] >= 0.0)) throw DomainError("grid bounds are inverted");
    const double n = std::max(1.0, std::ceil(size[a] / cell_size));
    total *= n;
    dims_[a] = static_cast<int>(std::min(n, 1e6));
  }
  if (total > kMaxCells) throw DomainError("grid would exceed the cell budget; enlarge cell size");
  cells_.resize(static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2]);
}

SpatialGrid::CellRange SpatialGrid::range_for(const Vec3& center, double half_width) const {
  CellRange r{};
  for (std::size_t a = 0; a < 3; ++a) {
    const double lo = (center[a] - half_width - bounds_.lo[a]) / cell_size_;
    const double hi = (center[a] + half_width - bounds_.lo[a]) / cell_size_;
    const double top = dims_[a] - 1;
    r.lo[a] = static_cast<int>(std::clamp(std::floor(lo), 0.0, top));
    r.hi[a] = static_cast<int>(std::clamp(std::floor(hi), 0.0, top));
  }
  return r;
}

void SpatialGrid::insert(const Sphere& s) {
  if (!bounds_.contains(s.center)) throw BoundsError("sphere center outside grid bounds");
  if (s.id > std::numeric_limits<std::uint32_t>::max()) throw BoundsError("sphere id exceeds grid capacity");
  const CellRange r = range_for(s.center, s.radius);
  if (owner_lo_.size() <= s.id) owner_lo_.resize(s.id + 1);
  owner_lo_[s.id] = r.lo;
  const auto id = static_cast<std::uint32_t>(s.id);
  for (int k = r.lo[2]; k <= r.hi[2]; ++k) {
    for (int j = r.lo[1]; j <= r.hi[1]; ++j) {
      for (int i = r.lo[0]; i <= r.hi[0]; ++i) cells_[flat(i, j, k)].push_back(id);
    }
  }
  ++count_;
}

std::vector<std::size_t> SpatialGrid::query(const Sphere& s, double margin) const {
  std::vector<std::size_t> out;
  for_each_candidate(s.center, s.radius, margin, [&](std::size_t id) { out.push_back(id); });
  return out;
}

}  // namespace spherefill
