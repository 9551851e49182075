#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spherefill/distributions.hpp"
#include "spherefill/geometry.hpp"
#include "spherefill/packing.hpp"
#include "spherefill/spatial_grid.hpp"

namespace spherefill {

/// How a brick's goals are measured.
struct FillRules {
  Box brick;
  /// Face membership by center on the face plane (full disks) instead of
  /// tangency within the contact tolerance (disks clipped to the face).
  bool centered_faces = false;
  std::array<double, 6> face_area{};
  double body_volume = 0.0;
  BodyAccounting body_accounting = BodyAccounting::clipped;
};

/// Incremental brick filler shared by all packers.
///
/// Holds every placed body (real spheres plus virtual obstacles such as
/// hemispherical voids), a broad-phase grid, the parent graph linking bodies
/// whose gap is within the parent tolerance, and running goal sums. Real
/// spheres keep their insertion order as output ids.
class FillEngine {
 public:
  FillEngine(const DomainSpec& spec, FillRules rules, Rng& rng);

  /// Adds an obstacle that takes part in overlap checks and may serve as a
  /// parent, but never appears in the output or the contact list.
  std::size_t add_obstacle(const Vec3& center, double radius);

  /// True when a sphere at `center` overlaps no body deeper than the contact tolerance.
  bool fits(const Vec3& center, double radius) const;

  /// Places one sphere per center (all with `radius`) if every copy fits
  /// against existing bodies and against the other copies. Returns the body
  /// id of the first copy. Containment is the caller's concern.
  std::optional<std::size_t> try_place(std::span<const Vec3> centers, double radius);
  std::optional<std::size_t> try_place(const Vec3& center, double radius) {
    return try_place(std::span<const Vec3>(&center, 1), radius);
  }

  /// Runs parent triplets newest-first through the three-sphere solver and
  /// accepts the first candidate fully inside the brick that fits. Failed
  /// triplets count against their members, which drop out after
  /// `prune_after` consecutive failures.
  std::optional<std::size_t> place_interior_sphere(double radius);

  /// Same search over parent pairs near face `f`, with centers at height
  /// `radius` above the face (or on it when `centered`). In-plane the sphere
  /// stays at least its radius away from the face edges. With
  /// `opposite_copy` the translate onto the opposite face is placed as well.
  std::optional<std::size_t> place_face_sphere(Face f, double radius, bool centered, bool opposite_copy);

  /// Draws radii and places face spheres until the face goal is met or the
  /// consecutive-failure limit is hit. Returns whether the goal was met.
  bool fill_face(Face f, bool centered, bool opposite_copy);
  /// Interior counterpart of fill_face against the body goal.
  bool fill_interior();

  double draw_radius() { return spec_.distribution.sample(rng_); }

  double face_fraction(Face f) const { return face_covered_[face_index(f)] / rules_.face_area[face_index(f)]; }
  double body_fraction() const { return body_filled_ / rules_.body_volume; }

  /// Whether `s` counts toward face `f` under the rules in force.
  bool on_face(const Sphere& s, Face f) const;

  std::size_t body_count() const { return bodies_.size(); }
  std::size_t sphere_count() const { return bodies_.size() - obstacle_count_; }
  const Sphere& body(std::size_t id) const { return bodies_[id]; }
  bool is_obstacle(std::size_t id) const { return obstacle_[id] != 0; }
  const std::vector<std::size_t>& parents_of(std::size_t id) const { return neighbors_[id]; }
  const DomainSpec& spec() const { return spec_; }
  const FillRules& rules() const { return rules_; }

  /// Real spheres renumbered densely, contacts, and boundary lists when
  /// `with_boundary_lists`. Metadata fractions are recomputed from the output.
  Packing to_packing(Method method, bool with_boundary_lists) const;

 private:
  struct PruneState {
    std::vector<std::uint32_t> failures;
    std::vector<char> pruned;
    void reset(std::size_t n);
    void grow(std::size_t n);
  };

  std::size_t insert(const Vec3& center, double radius, bool obstacle);
  bool inside_brick(const Vec3& c, double r) const;
  /// Returns true when any member crossed the prune threshold.
  bool record_failure(PruneState& st, std::span<const std::size_t> members);
  void record_success(PruneState& st, std::span<const std::size_t> members);

  DomainSpec spec_;
  FillRules rules_;
  Rng& rng_;
  double contact_tol_;
  double parent_tol_;
  SpatialGrid grid_;
  std::vector<Sphere> bodies_;
  std::vector<char> obstacle_;
  std::size_t obstacle_count_ = 0;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<ContactPair> contacts_;
  std::array<double, 6> face_covered_{};
  double body_filled_ = 0.0;
  PruneState interior_prune_;
  PruneState face_prune_;
};

}  // namespace spherefill
