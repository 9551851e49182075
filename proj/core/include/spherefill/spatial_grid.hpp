#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spherefill/geometry.hpp"
#include "spherefill/vec3.hpp"

namespace spherefill {

/// Uniform-grid broad phase. A sphere is registered in every cell its
/// bounding box overlaps, so a query scanning the cells under the probe's
/// margin-expanded box finds every sphere with gap <= margin, whatever the
/// radii. Cell ranges are clamped to the grid, which keeps that property for
/// boxes poking past the bounds. Sphere ids index internal tables and should
/// be dense.
class SpatialGrid {
 public:
  SpatialGrid(const Box& bounds, double cell_size);

  /// Throws BoundsError when the center lies outside the bounds.
  void insert(const Sphere& s);

  /// Ids of stored spheres that may lie within `margin` of `s`: a superset of
  /// the true neighbours, each id reported once.
  std::vector<std::size_t> query(const Sphere& s, double margin) const;

  /// Visitor form of query(); `fn(id)` is called once per candidate.
  template <class Fn>
  void for_each_candidate(const Vec3& center, double radius, double margin, Fn&& fn) const {
    const CellRange q = range_for(center, radius + margin);
    for (int k = q.lo[2]; k <= q.hi[2]; ++k) {
      for (int j = q.lo[1]; j <= q.hi[1]; ++j) {
        for (int i = q.lo[0]; i <= q.hi[0]; ++i) {
          for (const std::uint32_t id : cells_[flat(i, j, k)]) {
            const std::array<int, 3>& lo = owner_lo_[id];
            // Report from the first cell of the overlap between both ranges only.
            if (i == std::max(lo[0], q.lo[0]) && j == std::max(lo[1], q.lo[1]) &&
                k == std::max(lo[2], q.lo[2])) {
              fn(static_cast<std::size_t>(id));
            }
          }
        }
      }
    }
  }

  std::size_t size() const { return count_; }
  double cell_size() const { return cell_size_; }
  const Box& bounds() const { return bounds_; }
  std::array<int, 3> dims() const { return dims_; }

 private:
  struct CellRange {
    std::array<int, 3> lo;
    std::array<int, 3> hi;
  };

  CellRange range_for(const Vec3& center, double half_width) const;
  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i;
  }

  Box bounds_;
  double cell_size_;
  std::array<int, 3> dims_{};
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<std::array<int, 3>> owner_lo_;
  std::size_t count_ = 0;
};

/// Free-function spellings of the grid operations.
inline void grid_insert(SpatialGrid& g, const Sphere& s) { g.insert(s); }
inline std::vector<std::size_t> grid_query(const SpatialGrid& g, const Sphere& s, double margin) {
  return g.query(s, margin);
}

}  // namespace spherefill
