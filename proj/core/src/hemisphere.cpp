#include "spherefill/hemisphere.hpp"

#include "brick_phases.hpp"
#include "spherefill/fill_engine.hpp"

namespace spherefill {

Packing fill_hemisphere_domain(const HemisphereDomain& domain, const DomainSpec& spec, Rng& rng) {
  domain.check();
  DomainSpec local = spec;
  local.brick_side_lengths = domain.brick_side_lengths;
  local.brick_numbers = {1, 1, 1};
  local.check(Method::hemisphere);

  FillRules rules;
  rules.brick = {{0.0, 0.0, 0.0}, domain.brick_side_lengths};
  for (const Face f : kAllFaces) rules.face_area[face_index(f)] = domain.face_area(f);
  rules.body_volume = domain.carved_volume();
  rules.body_accounting = local.resolved_body_accounting();

  FillEngine engine(local, rules, rng);
  for (std::size_t v = 0; v < 2; ++v) {
    if (domain.hemisphere_radii[v] > 0.0) engine.add_obstacle(domain.void_center(v), domain.hemisphere_radii[v]);
  }
  detail::run_wall_tangent_phases(engine);

  Packing p = engine.to_packing(Method::hemisphere, false);
  p.meta.hemisphere_radii = domain.hemisphere_radii;
  if (!p.meta.goals_met) throw GoalUnreachable(std::move(p));
  return p;
}

}  // namespace spherefill
