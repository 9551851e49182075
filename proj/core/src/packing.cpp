#include "spherefill/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace spherefill {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::m1: return "m1";
    case Method::m2: return "m2";
    case Method::hemisphere: return "hemisphere";
  }
  return "?";
}

std::string_view face_name(Face f) {
  static constexpr std::array<std::string_view, 6> names = {"x_min", "y_min", "z_min",
                                                            "x_max", "y_max", "z_max"};
  return names[face_index(f)];
}

std::string_view body_accounting_name(BodyAccounting a) {
  return a == BodyAccounting::full ? "full" : "clipped";
}

BodyAccounting DomainSpec::resolved_body_accounting() const {
  return body_accounting.value_or(BodyAccounting::clipped);
}

Vec3 DomainSpec::domain_size() const {
  return {brick_side_lengths.x * brick_numbers[0], brick_side_lengths.y * brick_numbers[1],
          brick_side_lengths.z * brick_numbers[2]};
}

DomainSpec& DomainSpec::with_distribution(const RadiusDistribution& d) {
  distribution = d;
  contact.mean_radius = d.mean();
  return *this;
}

void DomainSpec::check(Method method) const {
  contact.check();
  const double rbar = contact.mean_radius;
  // Method 2 centers its corner spheres on the corners, so it only needs two radii per side.
  const double min_side = method == Method::m2 ? 2.0 * rbar : 4.0 * rbar;
  for (std::size_t a = 0; a < 3; ++a) {
    if (!(brick_side_lengths[a] > min_side) || !std::isfinite(brick_side_lengths[a])) {
      throw DomainError("brick side lengths too small for the mean radius");
    }
    if (brick_numbers[a] < 1) throw DomainError("brick numbers must be positive");
  }
  if (!(face_goal > 0.0 && face_goal <= 1.0)) throw DomainError("face goal must lie in (0, 1]");
  if (!(body_goal > 0.0 && body_goal <= 1.0)) throw DomainError("body goal must lie in (0, 1]");
  if (std::abs(rbar - distribution.mean()) > 1e-12 * rbar) {
    throw DomainError("contact mean radius out of sync with the distribution");
  }
  if (method == Method::hemisphere && brick_numbers != std::array<int, 3>{1, 1, 1}) {
    throw DomainError("hemisphere domains cannot be tiled");
  }
  if (tuning.failure_limit == 0 || tuning.triplet_cap == 0 || tuning.prune_after == 0 ||
      tuning.edge_retries == 0) {
    throw DomainError("fill tuning limits must be positive");
  }
}

Vec3 HemisphereDomain::void_center(std::size_t which) const {
  return {which == 0 ? 0.0 : brick_side_lengths.x, 0.5 * brick_side_lengths.y, 0.5 * brick_side_lengths.z};
}

double HemisphereDomain::carved_volume() const {
  const double h1 = hemisphere_radii[0];
  const double h2 = hemisphere_radii[1];
  return brick_side_lengths.x * brick_side_lengths.y * brick_side_lengths.z -
         (2.0 * std::numbers::pi / 3.0) * (h1 * h1 * h1 + h2 * h2 * h2);
}

double HemisphereDomain::face_area(Face f) const {
  const std::size_t a = face_axis(f);
  const double area = brick_side_lengths[(a + 1) % 3] * brick_side_lengths[(a + 2) % 3];
  if (a != 0) return area;
  const double h = hemisphere_radii[face_is_max(f) ? 1 : 0];
  return area - std::numbers::pi * h * h;
}

void HemisphereDomain::check() const {
  const double smallest = std::min({brick_side_lengths.x, brick_side_lengths.y, brick_side_lengths.z});
  if (!(smallest > 0.0)) throw DomainError("brick side lengths must be positive");
  for (const double h : hemisphere_radii) {
    if (!(h >= 0.0)) throw DomainError("hemisphere radii must be non-negative");
    if (h > 0.5 * smallest) {
      throw DomainError("hemisphere radius exceeds half the smallest brick dimension");
    }
  }
}

std::vector<double> Packing::radii() const {
  std::vector<double> out;
  out.reserve(spheres.size());
  for (const Sphere& s : spheres) out.push_back(s.radius);
  return out;
}

GoalUnreachable::GoalUnreachable(Packing partial)
    : Error("fill goal unreachable: consecutive-failure limit exceeded (body " +
            std::to_string(partial.meta.achieved_body) + ")"),
      partial_(std::move(partial)) {}

double face_goal_reference() { return std::numbers::pi / 4.0; }
double body_goal_reference() { return std::numbers::pi / 6.0; }

void normalize_contacts(std::vector<ContactPair>& contacts) {
  for (ContactPair& c : contacts) {
    if (c.i > c.j) std::swap(c.i, c.j);
  }
  std::erase_if(contacts, [](const ContactPair& c) { return c.i == c.j; });
  std::sort(contacts.begin(), contacts.end());
  contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
}

}  // namespace spherefill
