#include <gtest/gtest.h>

#include <cmath>

#include "spherefill/bonding.hpp"

using namespace spherefill;

namespace {

Packing bed(std::vector<Sphere> spheres, std::vector<ContactPair> contacts, double top) {
  Packing p;
  p.spheres = std::move(spheres);
  p.contacts = std::move(contacts);
  p.meta.extent = {1000, 1000, top};
  p.meta.spec.with_distribution(RadiusDistribution::weibull(15.7, 3.55));
  return p;
}

PhysicalConstants no_losses() {
  PhysicalConstants c;
  c.laser_power = 0.0;
  c.convection_coefficient = 0.0;
  return c;
}

double capacity(double r, const PhysicalConstants& c) { return particle_mass(r, c) * c.specific_heat; }

}  // namespace

TEST(Constants, DefaultsAndDerivedTransfer) {
  const PhysicalConstants c;
  EXPECT_NO_THROW(c.check());
  const PhysicalConstants d = PhysicalConstants::from_conductivities(14.14);
  EXPECT_NEAR(d.convection_coefficient, 3.14159265358979 * 0.262 * 14.14e-6 / 2.0, 1e-15);
  EXPECT_NEAR(d.conduction_coefficient, 3.14159265358979 * 15.0 * 14.14e-6 / 2.0, 1e-15);
  EXPECT_THROW(PhysicalConstants::from_conductivities(0.0), DomainError);
}

TEST(Constants, CheckRejectsBadValues) {
  PhysicalConstants c;
  c.sintering_temperature = 250.0;
  EXPECT_THROW(c.check(), DomainError);
  c = PhysicalConstants{};
  c.conduction_coefficient = 0.0;
  EXPECT_THROW(c.check(), DomainError);
  c = PhysicalConstants{};
  c.laser_power = -1.0;
  EXPECT_THROW(c.check(), DomainError);
  EXPECT_NO_THROW(no_losses().check());
}

TEST(Fluxes, LaserFootprintAndDepth) {
  const PhysicalConstants c;
  const Sphere s{{10, 0, 90}, 25.0, 0};
  EXPECT_NEAR(laser_flux(s, {0, 0}, 80.0, c), 100.0 / 8.0, 1e-12);
  EXPECT_NEAR(laser_flux(s, {60, 0}, 80.0, c), 100.0 / 8.0, 1e-12);  // exactly on the rim
  EXPECT_EQ(laser_flux(s, {60.1, 0}, 80.0, c), 0.0);
  EXPECT_EQ(laser_flux(s, {0, 0}, 95.0, c), 0.0);
  EXPECT_NEAR(convective_flux(400.0, c), -100.0 * c.convection_coefficient, 1e-15);
  EXPECT_NEAR(conductive_flux(300.0, 500.0, c), 200.0 * c.conduction_coefficient, 1e-15);
}

TEST(Simulator, SingleStepLaserHeatingMatchesHandValue) {
  // r = 14.14 um: V = 4/3 pi r^3 = 11842.3 um^3, m = 9.474e-8 g, m C_p = 4.737e-8 J/K.
  // Absorbed power 100 * (14.14 / 50)^3 = 2.2620 W, so dT = 2.2620 * 1e-5 / 4.737e-8 = 477.5 K.
  const double r = 14.14;
  const double r3 = r * r * r;
  const double heat_capacity = 8e-12 * (4.0 / 3.0) * 3.14159265358979323846 * r3 * 0.5;
  const double expected = 100.0 * r3 / 125000.0 * 1e-5 / heat_capacity;
  EXPECT_NEAR(expected, 477.5, 0.2);

  const BondingSimulator sim(bed({{{500, 500, 40}, r, 0}}, {}, 50.0), PhysicalConstants{});
  ThermalState s = sim.initial_state();
  sim.step(s, Vec2{500, 500}, 1e-5);
  EXPECT_NEAR(s.temperature[0] - 300.0, expected, 1e-9 * expected);
  EXPECT_DOUBLE_EQ(s.time, 1e-5);
}

TEST(Simulator, IsolatedParticleAtAmbientStaysPut) {
  const BondingSimulator sim(bed({{{500, 500, 10}, 15.0, 0}}, {}, 50.0), PhysicalConstants{});
  ThermalState s = sim.initial_state();
  for (int k = 0; k < 100; ++k) sim.step(s, std::nullopt, 1e-6);
  EXPECT_EQ(s.temperature[0], 300.0);
  EXPECT_TRUE(s.bonds.empty());
}

TEST(Simulator, ConductionConservesEnergy) {
  const PhysicalConstants c = no_losses();
  const BondingSimulator sim(bed({{{0, 0, 10}, 10.0, 0}, {{25, 0, 10}, 15.0, 1}}, {{0, 1}}, 50.0), c);
  ThermalState s = sim.initial_state();
  s.temperature = {400.0, 300.0};
  const double energy = capacity(10.0, c) * 400.0 + capacity(15.0, c) * 300.0;
  const double dt = 0.4 * sim.max_stable_time_step();
  for (int k = 0; k < 500; ++k) {
    sim.step(s, std::nullopt, dt);
    const double now = capacity(10.0, c) * s.temperature[0] + capacity(15.0, c) * s.temperature[1];
    ASSERT_NEAR(now, energy, 1e-9 * energy);
  }
  EXPECT_GT(s.temperature[1], 300.0);
  EXPECT_LT(s.temperature[0], 400.0);
}

TEST(Simulator, ExplicitUpdateMatchesDiscreteAndContinuousSolutions) {
  // dT/dt = (P + k_b (T_R - T)) / C has fixed point T* = T_R + P / k_b; the
  // explicit update contracts toward it by (1 - k_b dt / C) per step.
  PhysicalConstants c;
  c.convection_coefficient = 1e-4;
  const double r = 12.0;
  const double power = c.laser_power * std::pow(r / c.laser_radius, 3);
  const double cap = capacity(r, c);
  const double fixed = c.ambient_temperature + power / c.convection_coefficient;
  const double dt = 1e-6;
  const BondingSimulator sim(bed({{{0, 0, 45}, r, 0}}, {}, 50.0), c);
  ThermalState s = sim.initial_state();
  const double factor = 1.0 - c.convection_coefficient * dt / cap;
  for (int n = 1; n <= 100; ++n) {
    sim.step(s, Vec2{0, 0}, dt);
    const double discrete = fixed + std::pow(factor, n) * (c.ambient_temperature - fixed);
    ASSERT_NEAR(s.temperature[0], discrete, 1e-9 * discrete) << n;
    const double continuous =
        fixed + std::exp(-c.convection_coefficient * n * dt / cap) * (c.ambient_temperature - fixed);
    // First-order scheme: relative error of the rise bounded by one step's decay fraction.
    const double rate = c.convection_coefficient * dt / cap;
    ASSERT_NEAR(s.temperature[0], continuous, rate * std::abs(continuous - c.ambient_temperature) + 1e-9);
  }
}

TEST(Simulator, RelaxationWithoutLaserIsMonotone) {
  PhysicalConstants c;
  c.laser_power = 0.0;
  const BondingSimulator sim(
      bed({{{0, 0, 10}, 14.0, 0}, {{28, 0, 10}, 14.0, 1}, {{56, 0, 10}, 14.0, 2}}, {{0, 1}, {1, 2}}, 50.0), c);
  ThermalState s = sim.initial_state();
  s.temperature = {1500.0, 1500.0, 1500.0};
  const double dt = 0.9 * sim.max_stable_time_step();
  double previous = 1500.0;
  for (int k = 0; k < 2000; ++k) {
    sim.step(s, std::nullopt, dt);
    for (double t : s.temperature) ASSERT_GE(t, c.ambient_temperature);
    ASSERT_LE(s.temperature[1], previous);
    previous = s.temperature[1];
  }
  EXPECT_LT(previous, 1500.0);
}

TEST(Simulator, StabilityChecks) {
  const PhysicalConstants c;
  const BondingSimulator sim(bed({{{0, 0, 10}, 10.0, 0}, {{20, 0, 10}, 10.0, 1}}, {{0, 1}}, 50.0), c);
  const double pair_limit = 0.5 * capacity(10.0, c) / c.conduction_coefficient;
  EXPECT_NO_THROW(sim.check_time_step(0.99 * pair_limit));
  EXPECT_THROW(sim.check_time_step(pair_limit), StabilityError);
  EXPECT_THROW(sim.check_time_step(0.0), StabilityError);
  EXPECT_NO_THROW(sim.check_time_step(sim.max_stable_time_step()));
  EXPECT_LT(sim.max_stable_time_step(), pair_limit);

  // A crowded particle trips the per-particle bound first.
  std::vector<Sphere> star{{{0, 0, 10}, 10.0, 0}};
  std::vector<ContactPair> spokes;
  for (std::size_t k = 1; k <= 12; ++k) {
    star.push_back({{20.0 * static_cast<double>(k), 0, 10}, 10.0, k});
    spokes.push_back({0, k});
  }
  const BondingSimulator crowded(bed(star, spokes, 50.0), c);
  try {
    crowded.check_time_step(0.2 * pair_limit);
    FAIL() << "expected StabilityError";
  } catch (const StabilityError& e) {
    EXPECT_EQ(e.particle(), 0u);
  }
  EXPECT_THROW(crowded.run_print(LaserPath{}, 0.2 * pair_limit), StabilityError);
}

TEST(Simulator, NonFiniteTemperatureNamesParticle) {
  const BondingSimulator sim(bed({{{0, 0, 10}, 10.0, 0}, {{20, 0, 10}, 10.0, 1}}, {{0, 1}}, 50.0),
                             PhysicalConstants{});
  ThermalState s = sim.initial_state();
  s.temperature[1] = std::numeric_limits<double>::infinity();
  try {
    sim.step(s, std::nullopt, 1e-9);
    FAIL() << "expected StabilityError";
  } catch (const StabilityError& e) {
    EXPECT_EQ(e.particle(), 0u);
  }
}

TEST(Simulator, BondsFormOnceAndOnlyAccumulate) {
  const PhysicalConstants c;
  const BondingSimulator sim(
      bed({{{0, 0, 40}, 15.0, 0}, {{30, 0, 40}, 15.0, 1}, {{200, 0, 40}, 15.0, 2}}, {{0, 1}, {1, 2}}, 50.0), c);
  LaserPath path{{{{15, 0}, 2e-5}}, Sweep::stepped};
  const PrintResult r = sim.run_print(path, 1e-7);
  ASSERT_EQ(r.state.bonds.size(), 1u);
  EXPECT_EQ(r.state.bonds[0].i, 0u);
  EXPECT_EQ(r.state.bonds[0].j, 1u);
  EXPECT_EQ(r.state.bonded, (std::vector<char>{1, 0}));
  EXPECT_GE(r.state.temperature[0], c.sintering_temperature);
  EXPECT_LT(r.state.temperature[2], c.sintering_temperature);

  ThermalState s = r.state;
  for (int k = 0; k < 50; ++k) sim.step(s, std::nullopt, 1e-7);
  EXPECT_EQ(s.bonds.size(), 1u);  // cooling never removes a bond
}

TEST(Simulator, DepthLimitsAbsorption) {
  const PhysicalConstants c;
  const Packing p = bed({{{0, 0, 45}, 5.0, 0}, {{0, 0, 10}, 5.0, 1}}, {}, 50.0);
  const BondingSimulator shallow(p, c, {10.0});
  EXPECT_DOUBLE_EQ(shallow.exposed_from(), 40.0);
  ThermalState s = shallow.initial_state();
  shallow.step(s, Vec2{0, 0}, 1e-8);
  EXPECT_GT(s.temperature[0], 300.0);
  EXPECT_EQ(s.temperature[1], 300.0);
  const BondingSimulator deep(p, c, {50.0});
  s = deep.initial_state();
  deep.step(s, Vec2{0, 0}, 1e-8);
  EXPECT_GT(s.temperature[1], 300.0);
  const BondingSimulator standard(p, c);
  EXPECT_NEAR(standard.exposed_from(), 50.0 - 2.0 * p.meta.spec.mean_radius(), 1e-12);
}

TEST(Simulator, SnapshotsAtRequestedTimes) {
  const BondingSimulator sim(bed({{{0, 0, 45}, 10.0, 0}}, {}, 50.0), PhysicalConstants{});
  LaserPath path{{{{0, 0}, 1e-6}, {{100, 0}, 1e-6}}, Sweep::stepped};
  const std::vector<double> times{1.5e-6, 0.0, 5e-7};
  const PrintResult r = sim.run_print(path, 1e-7, times);
  ASSERT_EQ(r.snapshots.size(), 3u);
  EXPECT_EQ(r.snapshots[0].time, 0.0);
  EXPECT_GE(r.snapshots[1].time, 5e-7);
  EXPECT_LT(r.snapshots[1].time, 6e-7 + 1e-12);
  EXPECT_GE(r.snapshots[2].time, 1.5e-6);
  EXPECT_NEAR(r.state.time, 2e-6, 1e-15);
}

TEST(Simulator, EmptyPathLeavesBedAtAmbient) {
  const BondingSimulator sim(bed({{{0, 0, 45}, 10.0, 0}, {{20, 0, 45}, 10.0, 1}}, {{0, 1}}, 50.0),
                             PhysicalConstants{});
  const PrintResult r = sim.run_print(LaserPath{}, 1e-7);
  EXPECT_TRUE(r.state.bonds.empty());
  EXPECT_EQ(r.state.temperature, (std::vector<double>{300.0, 300.0}));
}

TEST(LaserPath, SteppedAndLinearPositions) {
  LaserPath p{{{{0, 0}, 1.0}, {{10, 20}, 2.0}}, Sweep::stepped};
  EXPECT_DOUBLE_EQ(p.duration(), 3.0);
  EXPECT_EQ(p.position_at(0.5)->x, 0.0);
  EXPECT_EQ(p.position_at(1.5)->y, 20.0);
  EXPECT_FALSE(p.position_at(3.0).has_value());
  EXPECT_FALSE(p.position_at(-0.1).has_value());
  p.sweep = Sweep::linear;
  EXPECT_DOUBLE_EQ(p.position_at(0.5)->x, 5.0);
  EXPECT_DOUBLE_EQ(p.position_at(0.5)->y, 10.0);
  EXPECT_DOUBLE_EQ(p.position_at(2.5)->x, 10.0);  // parks on the last point
  EXPECT_NO_THROW(p.check());
  p.segments[0].dwell = 0.0;
  EXPECT_THROW(p.check(), DomainError);
}
