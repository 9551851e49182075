#pragma once

#include <functional>

#include "spherefill/packing.hpp"

namespace spherefill::testing {

inline const RadiusDistribution& weibull_radii() {
  static const RadiusDistribution d = RadiusDistribution::weibull(15.7, 3.55);
  return d;
}

inline const RadiusDistribution& gamma_radii() {
  static const RadiusDistribution d = RadiusDistribution::gamma(7.0, 2.0);
  return d;
}

/// Cube of `side` mean radii with the given goals and contact parameter.
inline DomainSpec cube_spec(const RadiusDistribution& dist, double side, double face_goal, double body_goal,
                            double epsilon, std::uint64_t seed = 0) {
  DomainSpec s;
  s.with_distribution(dist);
  const double l = side * s.mean_radius();
  s.brick_side_lengths = {l, l, l};
  s.face_goal = face_goal;
  s.body_goal = body_goal;
  s.contact.epsilon = epsilon;
  s.contact.delta = 0.5;
  s.seed = seed;
  return s;
}

/// Runs a fill, returning the partial packing when a goal is missed.
inline Packing fill_or_partial(const std::function<Packing()>& fill) {
  try {
    return fill();
  } catch (const GoalUnreachable& e) {
    return e.partial();
  }
}

}  // namespace spherefill::testing
