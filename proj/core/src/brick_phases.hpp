#pragma once

// Internal building blocks shared by the packers.

#include <vector>

#include "spherefill/fill_engine.hpp"
#include "spherefill/packing.hpp"

namespace spherefill::detail {

/// Corner, edge, face and interior phases with every sphere kept inside the
/// brick and tangent to the walls it is meant to touch. Corners that do not
/// fit (for instance because an obstacle covers them) are skipped.
void run_wall_tangent_phases(FillEngine& engine);

/// Every pair with |gap| <= tolerance, found with a grid pass.
std::vector<ContactPair> contact_pass(const std::vector<Sphere>& spheres, const Box& bounds, double tolerance);

/// Union of two contact lists, normalized.
std::vector<ContactPair> merge_contacts(std::vector<ContactPair> a, const std::vector<ContactPair>& b);

}  // namespace spherefill::detail
