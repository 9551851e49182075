#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spherefill/geometry.hpp"
#include "spherefill/packing.hpp"
#include "spherefill/vec3.hpp"

namespace spherefill {

/// Material and process constants. Units: W, K, J/(g K), g/um^3, um.
struct PhysicalConstants {
  double laser_power = 100.0;
  double air_conductivity = 0.262;     ///< W/(m K)
  double steel_conductivity = 15.0;    ///< W/(m K)
  double convection_coefficient = 2.9090e-6;  ///< particle-to-air, W/K
  double conduction_coefficient = 3.3309e-4;  ///< particle-to-particle, W/K
  double specific_heat = 0.5;
  double density = 8e-12;
  double laser_radius = 50.0;
  double ambient_temperature = 300.0;
  double sintering_temperature = 1000.0;

  /// Transfer coefficients recomputed as pi * conductivity * r / 2 for a
  /// mean particle radius `mean_radius_um`; everything else as default.
  static PhysicalConstants from_conductivities(double mean_radius_um);

  /// Laser power and convection may be zero; every other constant must be
  /// positive, and sintering must lie above ambient. Throws DomainError.
  void check() const;
};

/// Mass of a steel ball of radius `r` um, in grams.
double particle_mass(double radius, const PhysicalConstants& c);

struct LaserSegment {
  Vec2 position;  ///< beam axis in the bed plane, um
  double dwell;   ///< seconds
};

enum class Sweep { stepped, linear };

/// Beam path: in stepped mode the beam parks on each position for its
/// dwell; in linear mode it travels from each position to the next over the
/// dwell (and parks on the last one).
struct LaserPath {
  std::vector<LaserSegment> segments;
  Sweep sweep = Sweep::stepped;

  double duration() const;
  /// Beam position at time t in [0, duration()); empty past the end.
  std::optional<Vec2> position_at(double t) const;
  void check() const;
};

/// Power into `particle` from a beam centered at `beam`: Q r^3 / r_l^3 when
/// the particle lies within the beam footprint and at or above
/// `exposed_from` (a height in um), otherwise 0.
double laser_flux(const Sphere& particle, Vec2 beam, double exposed_from, const PhysicalConstants& c);
/// k_b (T_ambient - T).
double convective_flux(double temperature, const PhysicalConstants& c);
/// k_t (T_other - T_self): heat flowing into self.
double conductive_flux(double self, double other, const PhysicalConstants& c);

struct Bond {
  std::size_t i = 0;
  std::size_t j = 0;
  double time = 0.0;
};

struct ThermalState {
  std::vector<double> temperature;
  std::vector<Bond> bonds;  ///< in formation order
  /// One flag per contact of the packing, set once the pair has bonded.
  std::vector<char> bonded;
  double time = 0.0;
};

struct Snapshot {
  double time = 0.0;
  std::vector<double> temperature;
};

struct PrintResult {
  ThermalState state;
  std::vector<Snapshot> snapshots;
};

struct SimulationOptions {
  /// Depth below the top of the bed that still absorbs the beam, um.
  /// Empty means two mean radii.
  std::optional<double> laser_depth;
};

/// Explicit heat exchange over a packing's contact graph. Updates are
/// synchronous: each step reads only the previous temperature field.
class BondingSimulator {
 public:
  BondingSimulator(const Packing& packing, PhysicalConstants constants, SimulationOptions options = {});

  ThermalState initial_state() const;

  /// Throws StabilityError when `dt` breaks either the pairwise bound
  /// k_t dt / (m_min C_p) < 1/2 or the per-particle bound
  /// dt (k_b + k_t degree) / (m C_p) <= 1.
  void check_time_step(double dt) const;

  /// Largest step passing check_time_step's per-particle bound, capped just
  /// under the pairwise bound. Infinite for a packing without particles.
  double max_stable_time_step() const;

  /// One step with the beam at `beam` (no laser when empty). Bonds form
  /// between contacting particles that both reach the sintering temperature.
  /// Throws StabilityError naming the first particle whose temperature is
  /// no longer finite.
  void step(ThermalState& state, std::optional<Vec2> beam, double dt) const;

  /// Follows `path` in steps of `dt`, recording a snapshot at the first step
  /// ending at or after each requested time.
  PrintResult run_print(const LaserPath& path, double dt, std::span<const double> snapshot_times = {}) const;

  std::size_t particle_count() const { return spheres_.size(); }
  double exposed_from() const { return exposed_from_; }
  const PhysicalConstants& constants() const { return constants_; }

 private:
  std::vector<Sphere> spheres_;
  std::vector<ContactPair> contacts_;
  std::vector<double> heat_capacity_;  ///< m C_p, J/K
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> neighbor_;
  PhysicalConstants constants_;
  double exposed_from_ = 0.0;
};

}  // namespace spherefill
