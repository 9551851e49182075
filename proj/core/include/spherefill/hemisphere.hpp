#pragma once

#include "spherefill/distributions.hpp"
#include "spherefill/packing.hpp"

namespace spherefill {

/// Fills a brick minus two hemispherical voids centered on the x = 0 and
/// x = L_x face centers. The voids act as obstacles (and as parents, so
/// spheres settle against their surfaces); a zero radius removes a void.
/// Body fraction is measured against the carved volume and face fraction on
/// the carved faces against the annulus. No boundary lists are produced.
///
/// Side lengths come from `domain`; distribution, goals, contact
/// parameters, tuning and seed from `spec`.
/// Throws GoalUnreachable (carrying the packing) when a goal is missed.
Packing fill_hemisphere_domain(const HemisphereDomain& domain, const DomainSpec& spec, Rng& rng);

}  // namespace spherefill
