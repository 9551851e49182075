#include <benchmark/benchmark.h>

#include <array>
#include <random>

#include "spherefill/bonding.hpp"
#include "spherefill/geometry.hpp"
#include "spherefill/method1.hpp"
#include "spherefill/method2.hpp"
#include "spherefill/spatial_grid.hpp"
#include "spherefill/validate.hpp"

using namespace spherefill;

namespace {

DomainSpec cube(double side_in_rbar, double face_goal, double body_goal, double epsilon) {
  DomainSpec s;
  s.with_distribution(RadiusDistribution::weibull(15.7, 3.55));
  const double l = side_in_rbar * s.mean_radius();
  s.brick_side_lengths = {l, l, l};
  s.face_goal = face_goal;
  s.body_goal = body_goal;
  s.contact.epsilon = epsilon;
  return s;
}

Packing fill_m1(const DomainSpec& s) {
  Rng rng(s.seed);
  try {
    return fill_unit_brick_m1(s, rng);
  } catch (const GoalUnreachable& e) {
    return e.partial();
  }
}

void BM_SolveContactPosition(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> rad(5.0, 20.0);
  std::vector<std::array<Sphere, 3>> triplets(1024);
  for (auto& t : triplets) {
    for (std::size_t k = 0; k < 3; ++k) t[k] = {{pos(gen), pos(gen), pos(gen)}, rad(gen), k};
  }
  std::size_t k = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(solve_contact_position(triplets[k++ & 1023], 14.0));
    } catch (const DegenerateConfiguration&) {
    }
  }
}
BENCHMARK(BM_SolveContactPosition);

void BM_GridQuery(benchmark::State& state) {
  const double side = 600.0;
  SpatialGrid grid({{0, 0, 0}, {side, side, side}}, 30.0);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> pos(0.0, side);
  for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
    grid.insert({{pos(gen), pos(gen), pos(gen)}, 14.0, i});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid.query({{pos(gen), pos(gen), pos(gen)}, 14.0, 0}, 2.8));
  }
}
BENCHMARK(BM_GridQuery)->Arg(1000)->Arg(10000);

void BM_FillMethod1(benchmark::State& state) {
  const DomainSpec s = cube(static_cast<double>(state.range(0)), 0.8, 0.55, 0.2);
  std::size_t n = 0;
  for (auto _ : state) {
    const Packing p = fill_m1(s);
    n = p.size();
    benchmark::DoNotOptimize(n);
  }
  state.counters["spheres"] = static_cast<double>(n);
}
BENCHMARK(BM_FillMethod1)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_FillMethod2(benchmark::State& state) {
  const DomainSpec s = cube(static_cast<double>(state.range(0)), 1.0, 0.9, 0.1);
  std::size_t n = 0;
  for (auto _ : state) {
    Rng rng(s.seed);
    try {
      n = fill_unit_brick_m2(s, rng).size();
    } catch (const GoalUnreachable& e) {
      n = e.partial().size();
    }
    benchmark::DoNotOptimize(n);
  }
  state.counters["spheres"] = static_cast<double>(n);
}
BENCHMARK(BM_FillMethod2)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_ReflectionTiling(benchmark::State& state) {
  const Packing brick = fill_m1(cube(15, 0.8, 0.55, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(tile_by_reflection(brick, {2, 2, 1}));
}
BENCHMARK(BM_ReflectionTiling)->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state) {
  const Packing p = tile_by_reflection(fill_m1(cube(15, 0.8, 0.55, 0.2)), {2, 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(validate_packing(p, p.meta.spec));
  state.counters["spheres"] = static_cast<double>(p.size());
}
BENCHMARK(BM_Validate)->Unit(benchmark::kMillisecond);

void BM_ThermalStep(benchmark::State& state) {
  const Packing p = tile_by_reflection(fill_m1(cube(15, 0.8, 0.55, 0.2)), {2, 2, 1});
  const BondingSimulator sim(p, PhysicalConstants{});
  ThermalState s = sim.initial_state();
  const double dt = 0.9 * sim.max_stable_time_step();
  const Vec2 beam{p.meta.extent.x / 2, p.meta.extent.y / 2};
  for (auto _ : state) sim.step(s, beam, dt);
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(p.size()));
}
BENCHMARK(BM_ThermalStep);

}  // namespace

BENCHMARK_MAIN();
