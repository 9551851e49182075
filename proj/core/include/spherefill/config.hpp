#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spherefill/bonding.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Raster over a square: `passes` parallel lines along x, evenly spread over
/// `side` in y and centered on `center`, walked in alternating directions
/// with the beam parked every `step` um for `dwell` seconds.
struct RasterSquare {
  Vec2 center;
  double side = 0.0;
  int passes = 1;
  double step = 0.0;
  double dwell = 0.0;

  LaserPath path() const;
};

struct SimulationConfig {
  PhysicalConstants constants{};
  LaserPath path{};
  /// Time step in seconds. Empty selects 90% of the largest stable step.
  std::optional<double> dt = 1e-6;
  std::vector<double> snapshot_times;
  std::optional<double> laser_depth;
};

struct RunConfig {
  Method method = Method::m1;
  DomainSpec spec{};
  std::optional<HemisphereDomain> hemisphere;
  std::optional<SimulationConfig> simulation;
  std::filesystem::path output_dir = "out";
  /// Write the packing even when a fill goal is missed.
  bool allow_partial = false;
};

/// Parses the plain-text run format:
///
///     # comment
///     key = value
///     [section]
///     key = value
///
/// Values are numbers, bare or quoted words, lists `[a, b]` (which may
/// span lines) and inline tables `{k = v, ...}`. Unknown sections and
/// keys, repeated keys and out-of-range values raise ConfigError with the
/// offending line and key. `distribution` is mandatory.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError when it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text for `config` that parses back to the same values.
std::string format_config(const RunConfig& config);

}  // namespace spherefill
