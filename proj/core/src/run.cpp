#include "spherefill/run.hpp"

#include "spherefill/hemisphere.hpp"
#include "spherefill/method1.hpp"
#include "spherefill/method2.hpp"
#include "spherefill/packing_io.hpp"

namespace spherefill {

namespace {

template <typename Fill, typename Tile>
Packing fill_and_tile(const RunConfig& config, Fill fill, Tile tile) {
  Rng rng(config.spec.seed);
  Packing brick;
  try {
    brick = fill(config.spec, rng);
  } catch (GoalUnreachable& e) {
    throw GoalUnreachable(tile(e.partial(), config.spec.brick_numbers));
  }
  return tile(brick, config.spec.brick_numbers);
}

}  // namespace

Packing build_packing(const RunConfig& config) {
  config.spec.check(config.method);
  switch (config.method) {
    case Method::m1:
      return fill_and_tile(config, fill_unit_brick_m1, tile_by_reflection);
    case Method::m2:
      return fill_and_tile(config, fill_unit_brick_m2, tile_by_copy);
    case Method::hemisphere: {
      HemisphereDomain domain;
      domain.brick_side_lengths = config.spec.brick_side_lengths;
      if (config.hemisphere) domain.hemisphere_radii = config.hemisphere->hemisphere_radii;
      Rng rng(config.spec.seed);
      return fill_hemisphere_domain(domain, config.spec, rng);
    }
  }
  throw DomainError("unknown method");
}

SimulationRun run_simulation(const Packing& packing, const SimulationConfig& config) {
  SimulationOptions options;
  options.laser_depth = config.laser_depth;
  const BondingSimulator sim(packing, config.constants, options);
  SimulationRun run;
  run.dt = config.dt.value_or(0.9 * sim.max_stable_time_step());
  run.result = sim.run_print(config.path, run.dt, config.snapshot_times);
  return run;
}

void write_pack_artifacts(const Packing& packing, const RunConfig& config, const std::filesystem::path& dir) {
  write_packing(packing, dir);
  write_text(format_config(config), dir / "config.cfg");
  const std::vector<double> radii = packing.radii();
  if (!radii.empty()) {
    write_histogram(radius_histogram(radii, config.spec.distribution, kHistogramBins), dir / "radii_hist.csv");
  }
}

void write_simulation_artifacts(const Packing& packing, const SimulationRun& run, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_bonds(run.result.state.bonds, dir / "bonds.csv");
  write_temperatures(packing, run.result.state.temperature, dir / "final_temperature.csv");
  for (std::size_t k = 0; k < run.result.snapshots.size(); ++k) {
    write_temperatures(packing, run.result.snapshots[k].temperature,
                       dir / ("snapshot_" + std::to_string(k) + ".csv"));
  }
}

}  // namespace spherefill
