#include "spherefill/bonding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spherefill {

namespace {

constexpr double kMetresPerMicron = 1e-6;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

PhysicalConstants PhysicalConstants::from_conductivities(double mean_radius_um) {
  require(mean_radius_um > 0.0, "mean radius must be positive");
  PhysicalConstants c;
  const double r = mean_radius_um * kMetresPerMicron;
  c.convection_coefficient = std::numbers::pi * c.air_conductivity * r / 2.0;
  c.conduction_coefficient = std::numbers::pi * c.steel_conductivity * r / 2.0;
  return c;
}

void PhysicalConstants::check() const {
  require(std::isfinite(laser_power) && laser_power >= 0.0, "laser power must be finite and non-negative");
  require(std::isfinite(convection_coefficient) && convection_coefficient >= 0.0,
          "convection coefficient must be finite and non-negative");
  require(air_conductivity > 0.0 && steel_conductivity > 0.0, "conductivities must be positive");
  require(conduction_coefficient > 0.0 && std::isfinite(conduction_coefficient),
          "conduction coefficient must be positive");
  require(specific_heat > 0.0 && density > 0.0 && laser_radius > 0.0,
          "specific heat, density and laser radius must be positive");
  require(ambient_temperature > 0.0, "ambient temperature must be positive");
  require(sintering_temperature > ambient_temperature, "sintering temperature must exceed ambient");
}

double particle_mass(double radius, const PhysicalConstants& c) {
  return c.density * ball_volume(radius);
}

double LaserPath::duration() const {
  double t = 0.0;
  for (const LaserSegment& s : segments) t += s.dwell;
  return t;
}

std::optional<Vec2> LaserPath::position_at(double t) const {
  if (t < 0.0) return std::nullopt;
  double start = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const LaserSegment& s = segments[k];
    if (t < start + s.dwell) {
      if (sweep == Sweep::stepped || k + 1 == segments.size()) return s.position;
      const double f = (t - start) / s.dwell;
      const Vec2 next = segments[k + 1].position;
      return Vec2{s.position.x + f * (next.x - s.position.x), s.position.y + f * (next.y - s.position.y)};
    }
    start += s.dwell;
  }
  return std::nullopt;
}

void LaserPath::check() const {
  for (const LaserSegment& s : segments) {
    require(std::isfinite(s.position.x) && std::isfinite(s.position.y), "laser positions must be finite");
    require(std::isfinite(s.dwell) && s.dwell > 0.0, "laser dwell times must be positive");
  }
}

double laser_flux(const Sphere& particle, Vec2 beam, double exposed_from, const PhysicalConstants& c) {
  const double dx = particle.center.x - beam.x;
  const double dy = particle.center.y - beam.y;
  if (dx * dx + dy * dy > c.laser_radius * c.laser_radius) return 0.0;
  if (particle.center.z < exposed_from) return 0.0;
  const double ratio = particle.radius / c.laser_radius;
  return c.laser_power * ratio * ratio * ratio;
}

double convective_flux(double temperature, const PhysicalConstants& c) {
  return c.convection_coefficient * (c.ambient_temperature - temperature);
}

double conductive_flux(double self, double other, const PhysicalConstants& c) {
  return c.conduction_coefficient * (other - self);
}

BondingSimulator::BondingSimulator(const Packing& packing, PhysicalConstants constants, SimulationOptions options)
    : spheres_(packing.spheres), contacts_(packing.contacts), constants_(constants) {
  constants_.check();
  const std::size_t n = spheres_.size();
  heat_capacity_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(spheres_[i].radius > 0.0, "particle radii must be positive");
    heat_capacity_[i] = particle_mass(spheres_[i].radius, constants_) * constants_.specific_heat;
  }

  std::vector<std::size_t> degree(n, 0);
  for (const ContactPair& e : contacts_) {
    if (e.i >= n || e.j >= n || e.i == e.j) throw DomainError("contact refers to a missing particle");
    ++degree[e.i];
    ++degree[e.j];
  }
  row_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_start_[i + 1] = row_start_[i] + degree[i];
  neighbor_.resize(row_start_[n]);
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (const ContactPair& e : contacts_) {
    neighbor_[fill[e.i]++] = e.j;
    neighbor_[fill[e.j]++] = e.i;
  }

  const double depth = options.laser_depth.value_or(2.0 * packing.meta.spec.mean_radius());
  require(std::isfinite(depth) && depth >= 0.0, "laser depth must be non-negative");
  exposed_from_ = packing.meta.extent.z - depth;
}

ThermalState BondingSimulator::initial_state() const {
  ThermalState s;
  s.temperature.assign(spheres_.size(), constants_.ambient_temperature);
  s.bonded.assign(contacts_.size(), 0);
  return s;
}

void BondingSimulator::check_time_step(double dt) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StabilityError("time step must be positive and finite", 0);
  if (spheres_.empty()) return;

  const auto lightest = static_cast<std::size_t>(
      std::min_element(heat_capacity_.begin(), heat_capacity_.end()) - heat_capacity_.begin());
  const double pair_ratio = constants_.conduction_coefficient * dt / heat_capacity_[lightest];
  if (!(pair_ratio < 0.5)) {
    throw StabilityError("time step " + std::to_string(dt) + " s too large for particle " +
                             std::to_string(lightest) + ": conduction ratio " + std::to_string(pair_ratio) +
                             " must stay below 0.5",
                         lightest);
  }
  for (std::size_t i = 0; i < spheres_.size(); ++i) {
    const double degree = static_cast<double>(row_start_[i + 1] - row_start_[i]);
    const double ratio =
        dt * (constants_.convection_coefficient + constants_.conduction_coefficient * degree) / heat_capacity_[i];
    if (ratio > 1.0) {
      throw StabilityError("time step " + std::to_string(dt) + " s too large for particle " + std::to_string(i) +
                               " with " + std::to_string(row_start_[i + 1] - row_start_[i]) +
                               " contacts: exchange ratio " + std::to_string(ratio) + " exceeds 1",
                           i);
    }
  }
}

double BondingSimulator::max_stable_time_step() const {
  double bound = std::numeric_limits<double>::infinity();
  if (spheres_.empty()) return bound;
  const double lightest = *std::min_element(heat_capacity_.begin(), heat_capacity_.end());
  bound = std::nextafter(0.5 * lightest / constants_.conduction_coefficient, 0.0);
  for (std::size_t i = 0; i < spheres_.size(); ++i) {
    const double degree = static_cast<double>(row_start_[i + 1] - row_start_[i]);
    const double rate = constants_.convection_coefficient + constants_.conduction_coefficient * degree;
    bound = std::min(bound, heat_capacity_[i] / rate);
  }
  return bound;
}

void BondingSimulator::step(ThermalState& state, std::optional<Vec2> beam, double dt) const {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const std::size_t n = spheres_.size();
  if (state.temperature.size() != n) throw DomainError("thermal state does not match the packing");

  const std::vector<double>& old = state.temperature;
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    double q = convective_flux(old[i], constants_);
    if (beam) q += laser_flux(spheres_[i], *beam, exposed_from_, constants_);
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      q += conductive_flux(old[i], old[neighbor_[k]], constants_);
    }
    next[i] = old[i] + q * dt / heat_capacity_[i];
    if (!std::isfinite(next[i])) {
      throw StabilityError("temperature of particle " + std::to_string(i) + " is no longer finite", i);
    }
  }
  state.temperature = std::move(next);
  state.time += dt;

  const double ts = constants_.sintering_temperature;
  const std::vector<double>& t = state.temperature;
  state.bonded.resize(contacts_.size(), 0);
  for (std::size_t k = 0; k < contacts_.size(); ++k) {
    const ContactPair& e = contacts_[k];
    if (state.bonded[k] || t[e.i] < ts || t[e.j] < ts) continue;
    state.bonded[k] = 1;
    state.bonds.push_back({e.i, e.j, state.time});
  }
}

PrintResult BondingSimulator::run_print(const LaserPath& path, double dt, std::span<const double> snapshot_times) const {
  path.check();
  check_time_step(dt);
  std::vector<double> pending(snapshot_times.begin(), snapshot_times.end());
  std::sort(pending.begin(), pending.end());

  PrintResult out;
  out.state = initial_state();
  std::size_t next_snapshot = 0;
  auto take_snapshots = [&] {
    while (next_snapshot < pending.size() && out.state.time >= pending[next_snapshot]) {
      out.snapshots.push_back({out.state.time, out.state.temperature});
      ++next_snapshot;
    }
  };
  take_snapshots();

  double segment_start = 0.0;
  for (const LaserSegment& seg : path.segments) {
    const auto steps = std::max<long long>(1, std::llround(seg.dwell / dt));
    for (long long k = 0; k < steps; ++k) {
      // Sample the beam at the middle of the step.
      const double local = std::min((static_cast<double>(k) + 0.5) * dt, seg.dwell * (1.0 - 1e-12));
      step(out.state, path.position_at(segment_start + local), dt);
      take_snapshots();
    }
    segment_start += seg.dwell;
  }
  return out;
}

}  // namespace spherefill
