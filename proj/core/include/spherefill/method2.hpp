#pragma once

#include <array>

#include "spherefill/distributions.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Fills one brick whose boundary spheres are centered on the brick
/// surface: mean-radius spheres on the eight corners, one chain per axis
/// copied onto the four parallel edges, the three minimum faces copied onto
/// their opposite faces, then an interior kept inside the brick. Opposite
/// faces therefore carry identical patterns.
/// Throws GoalUnreachable (carrying the brick) when a goal is missed.
Packing fill_unit_brick_m2(const DomainSpec& spec, Rng& rng);

/// Translates the brick into brick_numbers[0] x [1] x [2] copies and merges
/// the spheres that coincide on shared faces (one id per physical sphere).
/// Throws PreconditionError when opposite brick faces do not match.
Packing tile_by_copy(const Packing& brick, const std::array<int, 3>& brick_numbers);

}  // namespace spherefill
