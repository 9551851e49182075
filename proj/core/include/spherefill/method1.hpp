#pragma once

#include <array>

#include "spherefill/distributions.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Fills one brick with every sphere inside it: corner spheres of mean
/// radius tangent to three walls, chains along the twelve edges, spheres
/// tangent to each face, then the interior.
/// Throws GoalUnreachable (carrying the brick) when a goal is missed.
Packing fill_unit_brick_m1(const DomainSpec& spec, Rng& rng);

/// Mirrors the brick into brick_numbers[0] x [1] x [2] copies; odd-indexed
/// copies are reflected along that axis. Spheres near a shared face touch
/// their own images, and those contacts are added.
Packing tile_by_reflection(const Packing& brick, const std::array<int, 3>& brick_numbers);

}  // namespace spherefill
