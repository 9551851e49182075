#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spherefill/bonding.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Writes `spheres.csv`, `contacts.csv`, one `boundary_<face>.csv` per face
/// when the packing carries boundary lists, and `meta.txt`. Numbers use the
/// shortest text that reads back to the same double, so read_packing
/// restores the packing bit for bit. Creates `dir` if needed.
void write_packing(const Packing& p, const std::filesystem::path& dir);

/// Inverse of write_packing. Throws IoError on missing or malformed files.
Packing read_packing(const std::filesystem::path& dir);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double density = 0.0;   ///< count / (n * width)
  double expected = 0.0;  ///< distribution mass in the bin / width
};

/// Equal-width bins over [0, max radius].
std::vector<HistogramBin> radius_histogram(std::span<const double> radii, const RadiusDistribution& dist,
                                           std::size_t bins);

/// `radii_hist.csv`: lo,hi,count,density,expected.
void write_histogram(const std::vector<HistogramBin>& bins, const std::filesystem::path& file);

/// `bonds.csv`: i,j,t in formation order.
void write_bonds(const std::vector<Bond>& bonds, const std::filesystem::path& file);

/// Per-particle id,x,y,z,r,T table.
void write_temperatures(const Packing& p, std::span<const double> temperature, const std::filesystem::path& file);

/// Writes `text` to `file` verbatim.
void write_text(const std::string& text, const std::filesystem::path& file);

/// Shortest round-trip decimal form of `x`.
std::string format_double(double x);

}  // namespace spherefill
