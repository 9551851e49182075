#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spherefill/packing.hpp"

namespace spherefill {

namespace {

// Area of the disk of radius rho centered at the origin inside {X <= x, Y <= y}.
double quadrant_area(double x, double y, double rho) {
  if (x <= -rho || y <= -rho) return 0.0;
  const double rho2 = rho * rho;
  auto prim = [&](double t) {
    t = std::clamp(t, -rho, rho);
    return 0.5 * (t * std::sqrt(std::max(0.0, rho2 - t * t)) + rho2 * std::asin(t / rho));
  };
  const double xe = std::min(x, rho);
  if (y >= rho) return 2.0 * (prim(xe) - prim(-rho));

  const double w = std::sqrt(std::max(0.0, rho2 - y * y));
  double area = 0.0;
  auto piece = [&](double a, double b, bool middle) {
    b = std::min(b, xe);
    if (b <= a) return;
    if (middle) {
      area += y * (b - a) + (prim(b) - prim(a));
    } else if (y >= 0.0) {
      area += 2.0 * (prim(b) - prim(a));
    }
  };
  piece(-rho, -w, false);
  piece(-w, w, true);
  piece(w, rho, false);
  return area;
}

}  // namespace

double disk_rect_area(Vec2 center, double radius, Vec2 lo, Vec2 hi) {
  if (!(radius > 0.0) || hi.x <= lo.x || hi.y <= lo.y) return 0.0;
  const double x0 = lo.x - center.x;
  const double x1 = hi.x - center.x;
  const double y0 = lo.y - center.y;
  const double y1 = hi.y - center.y;
  if (x0 <= -radius && x1 >= radius && y0 <= -radius && y1 >= radius) {
    return std::numbers::pi * radius * radius;
  }
  const double a = quadrant_area(x1, y1, radius) - quadrant_area(x0, y1, radius) -
                   quadrant_area(x1, y0, radius) + quadrant_area(x0, y0, radius);
  return std::max(0.0, a);
}

double sphere_box_volume(const Vec3& c, double r, const Box& box) {
  if (!(r > 0.0)) return 0.0;
  bool inside = true;
  for (std::size_t a = 0; a < 3; ++a) {
    if (c[a] + r <= box.lo[a] || c[a] - r >= box.hi[a]) return 0.0;
    inside = inside && c[a] - r >= box.lo[a] && c[a] + r <= box.hi[a];
  }
  if (inside) return ball_volume(r);

  const Vec2 lo{box.lo.x, box.lo.y};
  const Vec2 hi{box.hi.x, box.hi.y};
  auto slice = [&](double z) {
    const double dz = z - c.z;
    const double rho2 = r * r - dz * dz;
    if (rho2 <= 0.0) return 0.0;
    return disk_rect_area({c.x, c.y}, std::sqrt(rho2), lo, hi);
  };

  const double za = std::max(box.lo.z, c.z - r);
  const double zb = std::min(box.hi.z, c.z + r);
  // Split where the slice disk starts touching a rectangle edge or corner.
  std::vector<double> cuts{za, zb, c.z};
  const double dx0 = box.lo.x - c.x;
  const double dx1 = box.hi.x - c.x;
  const double dy0 = box.lo.y - c.y;
  const double dy1 = box.hi.y - c.y;
  const std::array<double, 8> ds = {std::abs(dx0), std::abs(dx1), std::abs(dy0), std::abs(dy1),
                                    std::hypot(dx0, dy0), std::hypot(dx0, dy1),
                                    std::hypot(dx1, dy0), std::hypot(dx1, dy1)};
  for (const double d : ds) {
    if (d < r) {
      const double h = std::sqrt(r * r - d * d);
      cuts.push_back(c.z - h);
      cuts.push_back(c.z + h);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double volume = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::max(cuts[k], za);
    const double b = std::min(cuts[k + 1], zb);
    if (b <= a) continue;
    volume += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(slice, a, b, 12, 1e-14);
  }
  return volume;
}

double achieved_body_fraction(const Packing& p, const Box& region, std::optional<double> denominator) {
  const double denom = denominator.value_or(region.volume());
  if (!(denom > 0.0)) throw DomainError("body fraction needs a positive volume");
  double filled = 0.0;
  for (const Sphere& s : p.spheres) {
    if (region.contains(s.center)) filled += sphere_box_volume(s.center, s.radius, region);
  }
  return filled / denom;
}

double whole_ball_fraction(const Packing& p, const Box& region, double denominator) {
  if (!(denominator > 0.0)) throw DomainError("body fraction needs a positive volume");
  double filled = 0.0;
  for (const Sphere& s : p.spheres) {
    if (region.contains(s.center)) filled += ball_volume(s.radius);
  }
  return filled / denominator;
}

double achieved_body_fraction(const Packing& p, double domain_volume) {
  return achieved_body_fraction(p, p.domain_box(), domain_volume);
}

double achieved_face_fraction(const Packing& p, Face f, std::span<const std::size_t> members,
                              bool clip_to_face, double face_area) {
  if (!(face_area > 0.0)) throw DomainError("face fraction needs a positive area");
  const std::size_t a = face_axis(f);
  const std::size_t u = (a + 1) % 3;
  const std::size_t v = (a + 2) % 3;
  const Vec3 ext = p.meta.extent;
  double covered = 0.0;
  for (const std::size_t id : members) {
    const Sphere& s = p.spheres.at(id);
    covered += clip_to_face
                   ? disk_rect_area({s.center[u], s.center[v]}, s.radius, {0.0, 0.0}, {ext[u], ext[v]})
                   : std::numbers::pi * s.radius * s.radius;
  }
  return covered / face_area;
}

}  // namespace spherefill
