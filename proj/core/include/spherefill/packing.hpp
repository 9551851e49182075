#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spherefill/distributions.hpp"
#include "spherefill/errors.hpp"
#include "spherefill/geometry.hpp"
#include "spherefill/vec3.hpp"

namespace spherefill {

enum class Method { m1, m2, hemisphere };

std::string_view method_name(Method m);

/// Domain faces in output order: the three minimum faces, then the three maximum faces.
enum class Face : std::size_t { x_min = 0, y_min, z_min, x_max, y_max, z_max };
inline constexpr std::array<Face, 6> kAllFaces = {Face::x_min, Face::y_min, Face::z_min,
                                                  Face::x_max, Face::y_max, Face::z_max};

std::string_view face_name(Face f);
inline constexpr std::size_t face_axis(Face f) { return static_cast<std::size_t>(f) % 3; }
inline constexpr bool face_is_max(Face f) { return static_cast<std::size_t>(f) >= 3; }
inline constexpr std::size_t face_index(Face f) { return static_cast<std::size_t>(f); }

/// How filled volume is counted toward the body goal.
enum class BodyAccounting {
  clipped,  ///< only the part of each ball inside the brick
  full,     ///< whole balls of every sphere centered in the brick, boundary copies included
};

std::string_view body_accounting_name(BodyAccounting a);

/// Knobs bounding the fill loops.
struct FillTuning {
  std::size_t failure_limit = 2000;   ///< consecutive rejected radii ending a phase
  std::size_t triplet_cap = 500;      ///< parent combinations tried per radius
  std::size_t prune_after = 200;      ///< consecutive failed combinations dropping a parent
  std::size_t edge_retries = 50;      ///< redraws for the next slot of an edge chain before it stops
};

struct DomainSpec {
  Vec3 brick_side_lengths{1.0, 1.0, 1.0};
  std::array<int, 3> brick_numbers{1, 1, 1};
  double face_goal = 0.8;
  double body_goal = 0.55;
  /// epsilon and delta; mean_radius is kept in sync with the distribution by with_distribution().
  ContactParams contact{};
  RadiusDistribution distribution = RadiusDistribution::weibull(15.7, 3.55);
  std::uint64_t seed = 0;
  FillTuning tuning{};
  /// Empty selects clipped accounting.
  std::optional<BodyAccounting> body_accounting;

  /// Total domain extent: per-axis side length times brick count.
  Vec3 domain_size() const;
  double mean_radius() const { return contact.mean_radius; }
  /// Sets the distribution and refreshes contact.mean_radius.
  DomainSpec& with_distribution(const RadiusDistribution& d);
  BodyAccounting resolved_body_accounting() const;
  /// Throws DomainError when a field violates its invariant for `method`.
  void check(Method method) const;
};

/// Brick carved by two hemispherical voids centered on the x = 0 and
/// x = L_x face centers.
struct HemisphereDomain {
  Vec3 brick_side_lengths{1.0, 1.0, 1.0};
  std::array<double, 2> hemisphere_radii{0.0, 0.0};

  Vec3 void_center(std::size_t which) const;
  double carved_volume() const;
  /// Annulus area of a carved face; plain rectangle area for the other faces.
  double face_area(Face f) const;
  void check() const;
};

struct ContactPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend auto operator<=>(const ContactPair&, const ContactPair&) = default;
};

struct PackingMetadata {
  Method method = Method::m1;
  DomainSpec spec{};
  /// Extent of the filled box: one brick before tiling, the whole domain after.
  Vec3 extent{};
  std::optional<std::array<double, 2>> hemisphere_radii;
  bool goals_met = false;
  BodyAccounting body_accounting = BodyAccounting::clipped;
  /// Body fraction under `body_accounting`, the value the goal is checked against.
  double achieved_body = 0.0;
  /// Body fraction with every ball clipped to the brick.
  double achieved_body_clipped = 0.0;
  std::array<double, 6> achieved_face{};
};

using BoundaryLists = std::array<std::vector<std::size_t>, 6>;

struct Packing {
  std::vector<Sphere> spheres;
  /// i < j, sorted, unique.
  std::vector<ContactPair> contacts;
  /// Absent for hemisphere domains.
  std::optional<BoundaryLists> boundary_lists;
  std::size_t unit_brick_count = 0;
  PackingMetadata meta{};

  std::size_t size() const { return spheres.size(); }
  Box domain_box() const { return {{0.0, 0.0, 0.0}, meta.extent}; }
  std::vector<double> radii() const;
};

/// Raised when a fill phase hits its consecutive-failure limit before its goal.
/// Carries the partial packing with its achieved fractions.
class GoalUnreachable : public Error {
 public:
  explicit GoalUnreachable(Packing partial);
  const Packing& partial() const noexcept { return partial_; }
  Packing& partial() noexcept { return partial_; }

 private:
  Packing partial_;
};

/// pi/4: disk area over its circumscribed square.
double face_goal_reference();
/// pi/6: sphere volume over its circumscribed cube.
double body_goal_reference();

/// Sorts pairs with i < j, drops self pairs and duplicates.
void normalize_contacts(std::vector<ContactPair>& contacts);

inline double ball_volume(double r) { return 4.0 / 3.0 * std::numbers::pi * r * r * r; }

/// Area of the disk (center, radius) intersected with [lo, hi] in the plane.
double disk_rect_area(Vec2 center, double radius, Vec2 lo, Vec2 hi);
/// Volume of a ball intersected with an axis-aligned box.
double sphere_box_volume(const Vec3& center, double radius, const Box& box);

/// Sum of ball volumes clipped to `region` over spheres centered in
/// `region`, divided by `denominator` (region volume when omitted).
double achieved_body_fraction(const Packing& p, const Box& region, std::optional<double> denominator = {});
/// Convenience: region = packing domain, denominator = `domain_volume`.
double achieved_body_fraction(const Packing& p, double domain_volume);

/// Whole-ball volume of the spheres centered in `region`, divided by `denominator`.
double whole_ball_fraction(const Packing& p, const Box& region, double denominator);

/// Projected disk area of the spheres listed for `f`, divided by `face_area`.
/// Disks are clipped to the face rectangle when `clip_to_face`.
double achieved_face_fraction(const Packing& p, Face f, std::span<const std::size_t> members,
                              bool clip_to_face, double face_area);

}  // namespace spherefill
