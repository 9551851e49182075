#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spherefill/packing.hpp"

namespace spherefill {

enum class FindingKind {
  overlap,                    ///< gap deeper than -epsilon * mean radius
  contact_outside_tolerance,  ///< recorded contact whose |gap| exceeds the contact tolerance
  missing_contact,            ///< pair within tolerance absent from the contact list
  invalid_contact,            ///< out-of-range id, self pair, unsorted or duplicate entry
  boundary_not_qualifying,    ///< listed sphere not on its face
  boundary_missing,           ///< sphere on a face absent from that face's list
  outside_domain,             ///< sphere leaves the region its method confines it to
  void_penetration,           ///< sphere cuts into a hemispherical void
};

std::string_view finding_kind_name(FindingKind k);

struct Finding {
  FindingKind kind;
  std::size_t i = 0;
  /// Second sphere for pair findings; face index for boundary findings.
  std::size_t j = 0;
  double value = 0.0;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
  std::size_t count(FindingKind k) const;
  std::string summary() const;
};

/// Checks a packing against its contact rules by brute force over all pairs.
/// Deliberately independent of the packers: no grid, no shared placement
/// code. Threshold comparisons carry a 1e-9 um slack for coordinate round-off.
ValidationReport validate_packing(const Packing& p, const DomainSpec& spec);

}  // namespace spherefill
