#pragma once

#include <filesystem>
#include <vector>

#include "spherefill/bonding.hpp"
#include "spherefill/config.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Fills the configured domain (one brick, then tiled to brick_numbers)
/// from a fresh stream seeded with `config.spec.seed`. When a goal is
/// missed the partial brick is still tiled and thrown inside
/// GoalUnreachable.
Packing build_packing(const RunConfig& config);

struct SimulationRun {
  double dt = 0.0;
  PrintResult result;
};

/// Runs the configured laser path over `packing`. Requires
/// `config.simulation`.
SimulationRun run_simulation(const Packing& packing, const SimulationConfig& config);

/// Writes a packing, the canonical config echo (`config.cfg`) and the
/// radius histogram (`radii_hist.csv`) into `dir`.
void write_pack_artifacts(const Packing& packing, const RunConfig& config, const std::filesystem::path& dir);

/// Writes `bonds.csv`, `final_temperature.csv` and one
/// `snapshot_<k>.csv` per snapshot into `dir`.
void write_simulation_artifacts(const Packing& packing, const SimulationRun& run, const std::filesystem::path& dir);

/// Bin count used for the radius histogram artifact.
inline constexpr std::size_t kHistogramBins = 40;

}  // namespace spherefill
