#include "spherefill/method2.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "brick_phases.hpp"
#include "spherefill/fill_engine.hpp"
#include "spherefill/spatial_grid.hpp"

namespace spherefill {

namespace {

constexpr double kCoincident = 1e-6;
constexpr double kRadiusMatch = 1e-9;

bool same_radius(double a, double b) { return std::abs(a - b) <= kRadiusMatch * std::max(a, b); }

// Chain of spheres centered on the edge line along `axis` through the
// low-low corner, copied onto the three parallel edges. A non-positive
// `prev_radius` starts the chain on the corner point itself.
void walk_centered_edge(FillEngine& engine, std::size_t axis, int dir, double prev_radius) {
  const Box& brick = engine.rules().brick;
  const std::size_t b = (axis + 1) % 3;
  const std::size_t c = (axis + 2) % 3;
  const double lo = brick.lo[axis];
  const double hi = brick.hi[axis];
  const std::size_t limit = engine.spec().tuning.edge_retries;
  double along = dir > 0 ? lo : hi;
  std::size_t failures = 0;
  while (failures < limit) {
    const double r = engine.draw_radius();
    const double s = prev_radius > 0.0 ? along + dir * (prev_radius + r) : along;
    if (s < lo || s > hi) {
      ++failures;
      continue;
    }
    std::array<Vec3, 4> group;
    for (unsigned k = 0; k < 4; ++k) {
      group[k][axis] = s;
      group[k][b] = k & 1U ? brick.hi[b] : brick.lo[b];
      group[k][c] = k & 2U ? brick.hi[c] : brick.lo[c];
    }
    if (engine.try_place(group, r)) {
      along = s;
      prev_radius = r;
      failures = 0;
    } else {
      ++failures;
    }
  }
}

std::optional<std::size_t> find_coincident(const SpatialGrid& grid, const std::vector<Sphere>& spheres,
                                           const Vec3& center, double radius) {
  std::optional<std::size_t> hit;
  grid.for_each_candidate(center, 0.0, kCoincident, [&](std::size_t id) {
    if (hit) return;
    const Sphere& s = spheres[id];
    if (distance(s.center, center) <= kCoincident && same_radius(s.radius, radius)) hit = id;
  });
  return hit;
}

bool on_plane(const Sphere& s, std::size_t axis, double plane) {
  return std::abs(s.center[axis] - plane) <= kCoincident;
}

double max_radius(const std::vector<Sphere>& spheres) {
  double r = 0.0;
  for (const Sphere& s : spheres) r = std::max(r, s.radius);
  return r;
}

Box padded(const Vec3& extent) {
  const double pad = 1e-6 * std::max({extent.x, extent.y, extent.z, 1.0});
  return Box{{0.0, 0.0, 0.0}, extent}.expanded(pad);
}

void require_matching_faces(const Packing& brick) {
  const Vec3 side = brick.meta.extent;
  const double cell = std::max(2.0 * max_radius(brick.spheres), 1e-3);
  SpatialGrid grid(padded(side), cell);
  for (std::size_t i = 0; i < brick.spheres.size(); ++i) {
    Sphere s = brick.spheres[i];
    s.id = i;
    grid.insert(s);
  }
  for (std::size_t a = 0; a < 3; ++a) {
    std::size_t low = 0;
    std::size_t high = 0;
    for (const Sphere& s : brick.spheres) {
      if (on_plane(s, a, side[a])) ++high;
      if (!on_plane(s, a, 0.0)) continue;
      ++low;
      Vec3 shifted = s.center;
      shifted[a] += side[a];
      if (!find_coincident(grid, brick.spheres, shifted, s.radius)) {
        throw PreconditionError("brick faces do not match: a sphere at " + std::to_string(s.center[a]) +
                                " has no translate on the opposite face");
      }
    }
    if (low != high) throw PreconditionError("brick faces do not match: opposite faces differ in count");
  }
}

}  // namespace

Packing fill_unit_brick_m2(const DomainSpec& spec, Rng& rng) {
  spec.check(Method::m2);
  const Vec3 side = spec.brick_side_lengths;
  FillRules rules;
  rules.brick = {{0.0, 0.0, 0.0}, side};
  rules.centered_faces = true;
  for (const Face f : kAllFaces) {
    const std::size_t a = face_axis(f);
    rules.face_area[face_index(f)] = side[(a + 1) % 3] * side[(a + 2) % 3];
  }
  rules.body_volume = side.x * side.y * side.z;
  rules.body_accounting = spec.resolved_body_accounting();
  FillEngine engine(spec, rules, rng);

  const double rbar = spec.mean_radius();
  std::array<Vec3, 8> corners;
  for (unsigned k = 0; k < 8; ++k) {
    for (std::size_t a = 0; a < 3; ++a) corners[k][a] = (k >> a) & 1U ? side[a] : 0.0;
  }
  const double anchor = engine.try_place(corners, rbar) ? rbar : 0.0;

  for (std::size_t axis = 0; axis < 3; ++axis) {
    walk_centered_edge(engine, axis, +1, anchor);
    walk_centered_edge(engine, axis, -1, anchor);
  }
  for (const Face f : {Face::x_min, Face::y_min, Face::z_min}) engine.fill_face(f, true, true);
  engine.fill_interior();

  Packing p = engine.to_packing(Method::m2, true);
  if (!p.meta.goals_met) throw GoalUnreachable(std::move(p));
  return p;
}

Packing tile_by_copy(const Packing& brick, const std::array<int, 3>& brick_numbers) {
  for (const int n : brick_numbers) {
    if (n < 1) throw DomainError("brick numbers must be positive");
  }
  require_matching_faces(brick);
  const Vec3 side = brick.meta.extent;
  if (brick_numbers == std::array<int, 3>{1, 1, 1}) {
    Packing same = brick;
    same.meta.spec.brick_numbers = brick_numbers;
    return same;
  }
  Packing out;
  out.meta = brick.meta;
  out.meta.spec.brick_numbers = brick_numbers;
  out.meta.extent = {side.x * brick_numbers[0], side.y * brick_numbers[1], side.z * brick_numbers[2]};
  out.unit_brick_count = brick.spheres.size();

  const double cell = std::max(2.0 * max_radius(brick.spheres), 1e-3);
  SpatialGrid merged(padded(out.meta.extent), cell);
  std::vector<std::size_t> remap(brick.spheres.size());
  for (int k = 0; k < brick_numbers[2]; ++k) {
    for (int j = 0; j < brick_numbers[1]; ++j) {
      for (int i = 0; i < brick_numbers[0]; ++i) {
        const Vec3 shift{i * side.x, j * side.y, k * side.z};
        for (std::size_t n = 0; n < brick.spheres.size(); ++n) {
          const Sphere& s = brick.spheres[n];
          const Vec3 c = s.center + shift;
          bool shared = false;
          for (std::size_t a = 0; a < 3; ++a) shared = shared || on_plane(s, a, 0.0) || on_plane(s, a, side[a]);
          if (shared) {
            if (auto hit = find_coincident(merged, out.spheres, c, s.radius)) {
              remap[n] = *hit;
              continue;
            }
          }
          const Sphere placed{c, s.radius, out.spheres.size()};
          remap[n] = placed.id;
          out.spheres.push_back(placed);
          if (shared) merged.insert(placed);
        }
        for (const ContactPair& cp : brick.contacts) out.contacts.push_back({remap[cp.i], remap[cp.j]});
      }
    }
  }

  const double tol = brick.meta.spec.contact.contact_tolerance();
  out.contacts = detail::merge_contacts(std::move(out.contacts), detail::contact_pass(out.spheres, out.domain_box(), tol));
  if (brick.boundary_lists) {
    BoundaryLists lists;
    for (const Face f : kAllFaces) {
      const std::size_t a = face_axis(f);
      const double plane = face_is_max(f) ? out.meta.extent[a] : 0.0;
      for (const Sphere& s : out.spheres) {
        if (on_plane(s, a, plane)) lists[face_index(f)].push_back(s.id);
      }
    }
    out.boundary_lists = std::move(lists);
  }
  return out;
}

}  // namespace spherefill
