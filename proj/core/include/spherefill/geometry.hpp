#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "spherefill/vec3.hpp"

namespace spherefill {

struct Sphere {
  Vec3 center;
  double radius = 0.0;
  std::size_t id = 0;
};

/// Center distance minus radius sum: negative overlaps, zero touches.
inline double gap(const Sphere& a, const Sphere& b) {
  return distance(a.center, b.center) - (a.radius + b.radius);
}

/// Contact (epsilon) and parent (delta) tolerances, both in units of the mean radius.
struct ContactParams {
  double epsilon = 0.2;
  double delta = 0.5;
  double mean_radius = 1.0;

  double contact_tolerance() const { return epsilon * mean_radius; }
  double parent_tolerance() const { return delta * mean_radius; }
  /// Throws DomainError unless 0 <= epsilon <= delta <= 1 and mean_radius > 0.
  void check() const;
};

/// |gap| <= epsilon * mean radius.
bool in_contact(const Sphere& a, const Sphere& b, const ContactParams& p);

/// Up to two placements, each used-slot ordered; `count` tells how many are valid.
struct Candidates {
  std::array<Vec3, 2> points{};
  std::size_t count = 0;

  std::span<const Vec3> view() const { return {points.data(), count}; }
};

/// Centers x with |x - c_i| = new_radius + R_i for the three parents.
/// Solved in a local frame (parent 1 at the origin, parent 2 on the x axis,
/// parent 3 in the xy plane); the line of the two radical planes is
/// intersected with the first sphere equation. Two generic solutions are
/// mirror images through the parents' plane and come back
/// positive-normal-side first, where the normal is (c2-c1)x(c3-c1).
/// Throws DegenerateConfiguration for collinear or coincident parents.
Candidates solve_contact_position(std::span<const Sphere, 3> parents, double new_radius);

/// Axis-aligned plane `coordinate[axis] == offset`; `inward` (+1/-1) points
/// into the region being filled.
struct AxisPlane {
  std::size_t axis = 0;
  double offset = 0.0;
  int inward = 1;

  double signed_distance(const Vec3& p) const { return inward * (p[axis] - offset); }
};

/// Centers at signed height `height` above `plane` touching two parent
/// spheres: the in-plane analogue of solve_contact_position, with the plane
/// constraint replacing the third sphere equation. Generic solutions come
/// back ordered by the sign of the in-plane cross product (left of p1->p2 first).
/// Throws DegenerateConfiguration when the parents project onto the same point.
Candidates solve_planar_contact(const Sphere& p1, const Sphere& p2, double new_radius,
                                const AxisPlane& plane, double height);

}  // namespace spherefill
