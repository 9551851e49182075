#include "brick_phases.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "spherefill/spatial_grid.hpp"

namespace spherefill::detail {

namespace {

struct ChainLink {
  double along;
  double radius;
};

// Walks one edge from `start` in direction `dir`, each sphere tangent to the
// two walls meeting at the edge and to the previous link.
void walk_edge(FillEngine& engine, std::size_t axis, const std::array<double, 3>& fixed, int dir,
               std::optional<ChainLink> prev) {
  const Box& brick = engine.rules().brick;
  const std::size_t limit = engine.spec().tuning.edge_retries;
  const double lo = brick.lo[axis];
  const double hi = brick.hi[axis];
  std::size_t failures = 0;
  while (failures < limit) {
    const double r = engine.draw_radius();
    double s = 0.0;
    if (prev) {
      const double sum = r + prev->radius;
      const double diff = r - prev->radius;
      const double step2 = sum * sum - 2.0 * diff * diff;
      if (!(step2 > 0.0)) {
        ++failures;
        continue;
      }
      s = prev->along + dir * std::sqrt(step2);
    } else {
      s = dir > 0 ? lo + r : hi - r;
    }
    if (s - r < lo || s + r > hi) {
      ++failures;
      continue;
    }
    Vec3 c;
    for (std::size_t a = 0; a < 3; ++a) {
      if (a == axis) {
        c[a] = s;
      } else {
        // fixed[a] < 0 marks the low wall, > 0 the high wall.
        c[a] = fixed[a] < 0 ? brick.lo[a] + r : brick.hi[a] - r;
      }
    }
    if (engine.try_place(c, r)) {
      prev = ChainLink{s, r};
      failures = 0;
    } else {
      ++failures;
    }
  }
}

}  // namespace

void run_wall_tangent_phases(FillEngine& engine) {
  const Box& brick = engine.rules().brick;
  const double rbar = engine.spec().mean_radius();

  // Corner index bit a set means the high wall on axis a.
  std::array<bool, 8> corner_placed{};
  for (unsigned k = 0; k < 8; ++k) {
    Vec3 c;
    for (std::size_t a = 0; a < 3; ++a) c[a] = (k >> a) & 1U ? brick.hi[a] - rbar : brick.lo[a] + rbar;
    corner_placed[k] = engine.try_place(c, rbar).has_value();
  }

  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t b = (axis + 1) % 3;
    const std::size_t c = (axis + 2) % 3;
    for (unsigned side = 0; side < 4; ++side) {
      const bool b_hi = side & 1U;
      const bool c_hi = side & 2U;
      std::array<double, 3> fixed{};
      fixed[b] = b_hi ? 1.0 : -1.0;
      fixed[c] = c_hi ? 1.0 : -1.0;
      const unsigned base = (b_hi ? 1U << b : 0U) | (c_hi ? 1U << c : 0U);
      const unsigned start = base;
      const unsigned end = base | (1U << axis);
      auto link = [&](unsigned corner, double along) -> std::optional<ChainLink> {
        if (!corner_placed[corner]) return std::nullopt;
        return ChainLink{along, rbar};
      };
      walk_edge(engine, axis, fixed, +1, link(start, brick.lo[axis] + rbar));
      walk_edge(engine, axis, fixed, -1, link(end, brick.hi[axis] - rbar));
    }
  }

  for (const Face f : kAllFaces) engine.fill_face(f, false, false);
  engine.fill_interior();
}

std::vector<ContactPair> contact_pass(const std::vector<Sphere>& spheres, const Box& bounds, double tolerance) {
  std::vector<ContactPair> out;
  if (spheres.empty()) return out;
  double r_max = 0.0;
  for (const Sphere& s : spheres) r_max = std::max(r_max, s.radius);
  const double pad = 1e-6 * std::max({bounds.size().x, bounds.size().y, bounds.size().z, 1.0});
  SpatialGrid grid(bounds.expanded(pad), 2.0 * r_max + tolerance);
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    Sphere s = spheres[i];
    s.id = i;
    grid.for_each_candidate(s.center, s.radius, tolerance, [&](std::size_t j) {
      if (std::abs(gap(s, spheres[j])) <= tolerance) out.push_back({j, i});
    });
    grid.insert(s);
  }
  normalize_contacts(out);
  return out;
}

std::vector<ContactPair> merge_contacts(std::vector<ContactPair> a, const std::vector<ContactPair>& b) {
  a.insert(a.end(), b.begin(), b.end());
  normalize_contacts(a);
  return a;
}

}  // namespace spherefill::detail
