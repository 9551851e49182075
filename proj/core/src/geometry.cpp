#include "spherefill/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "spherefill/errors.hpp"

namespace spherefill {

namespace {

// Discriminants within this fraction of scale^2 collapse to a single tangent solution.
constexpr double kTangentTolerance = 1e-9;
// Parents closer to collinear than this (relative to the frame scale) are rejected.
constexpr double kDegenerateTolerance = 1e-12;

}  // namespace

void ContactParams::check() const {
  if (!(epsilon >= 0.0 && epsilon <= delta && delta <= 1.0)) {
    throw DomainError("contact parameters require 0 <= epsilon <= delta <= 1");
  }
  if (!(mean_radius > 0.0)) throw DomainError("mean radius must be positive");
}

bool in_contact(const Sphere& a, const Sphere& b, const ContactParams& p) {
  return std::abs(gap(a, b)) <= p.contact_tolerance();
}

Candidates solve_contact_position(std::span<const Sphere, 3> parents, double new_radius) {
  const Vec3 c1 = parents[0].center;
  const Vec3 d12 = parents[1].center - c1;
  const Vec3 d13 = parents[2].center - c1;
  const double s1 = new_radius + parents[0].radius;
  const double s2 = new_radius + parents[1].radius;
  const double s3 = new_radius + parents[2].radius;

  const double d = norm(d12);
  const double scale = std::max({d, norm(d13), s1, s2, s3});
  if (d <= kDegenerateTolerance * scale) {
    throw DegenerateConfiguration("contact solve: first two parents coincide");
  }
  const Vec3 ex = d12 * (1.0 / d);
  const double i = dot(ex, d13);
  Vec3 ey = d13 - ex * i;
  const double j = norm(ey);
  if (j <= kDegenerateTolerance * scale) {
    throw DegenerateConfiguration("contact solve: parent centers are collinear");
  }
  ey *= 1.0 / j;
  const Vec3 ez = cross(ex, ey);

  // Radical planes of spheres (1,2) and (1,3) in the local frame.
  const double x = (s1 * s1 - s2 * s2 + d * d) / (2.0 * d);
  const double y = (s1 * s1 - s3 * s3 + i * i + j * j - 2.0 * i * x) / (2.0 * j);
  const double z2 = s1 * s1 - x * x - y * y;

  Candidates out;
  const double tol = kTangentTolerance * scale * scale;
  const Vec3 base = c1 + ex * x + ey * y;
  if (z2 < -tol) return out;
  if (z2 <= tol) {
    out.points[0] = base;
    out.count = 1;
    return out;
  }
  const double z = std::sqrt(z2);
  out.points[0] = base + ez * z;
  out.points[1] = base - ez * z;
  out.count = 2;
  return out;
}

Candidates solve_planar_contact(const Sphere& p1, const Sphere& p2, double new_radius,
                                const AxisPlane& plane, double height) {
  const std::size_t u = (plane.axis + 1) % 3;
  const std::size_t v = (plane.axis + 2) % 3;

  const double h1 = plane.signed_distance(p1.center);
  const double h2 = plane.signed_distance(p2.center);
  const double a1 = new_radius + p1.radius;
  const double a2 = new_radius + p2.radius;
  const double rho1_sq = a1 * a1 - (height - h1) * (height - h1);
  const double rho2_sq = a2 * a2 - (height - h2) * (height - h2);

  Candidates out;
  if (rho1_sq < 0.0 || rho2_sq < 0.0) return out;

  const double du = p2.center[u] - p1.center[u];
  const double dv = p2.center[v] - p1.center[v];
  const double d = std::hypot(du, dv);
  const double scale = std::max({d, a1, a2});
  if (d <= kDegenerateTolerance * scale) {
    throw DegenerateConfiguration("planar contact solve: parents project onto one point");
  }
  const double eu = du / d;
  const double ev = dv / d;
  const double along = (rho1_sq - rho2_sq + d * d) / (2.0 * d);
  const double across2 = rho1_sq - along * along;

  Vec3 base;
  base[plane.axis] = plane.offset + plane.inward * height;
  base[u] = p1.center[u] + eu * along;
  base[v] = p1.center[v] + ev * along;

  const double tol = kTangentTolerance * scale * scale;
  if (across2 < -tol) return out;
  if (across2 <= tol) {
    out.points[0] = base;
    out.count = 1;
    return out;
  }
  const double across = std::sqrt(across2);
  // Left normal of (eu, ev) is (-ev, eu).
  out.points[0] = base;
  out.points[0][u] -= ev * across;
  out.points[0][v] += eu * across;
  out.points[1] = base;
  out.points[1][u] += ev * across;
  out.points[1][v] -= eu * across;
  out.count = 2;
  return out;
}

}  // namespace spherefill
