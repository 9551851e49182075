#include "spherefill/method1.hpp"

#include "brick_phases.hpp"
#include "spherefill/fill_engine.hpp"

namespace spherefill {

namespace {

FillRules wall_tangent_rules(const Vec3& side, BodyAccounting accounting) {
  FillRules rules;
  rules.brick = {{0.0, 0.0, 0.0}, side};
  for (const Face f : kAllFaces) {
    const std::size_t a = face_axis(f);
    rules.face_area[face_index(f)] = side[(a + 1) % 3] * side[(a + 2) % 3];
  }
  rules.body_volume = side.x * side.y * side.z;
  rules.body_accounting = accounting;
  return rules;
}

}  // namespace

Packing fill_unit_brick_m1(const DomainSpec& spec, Rng& rng) {
  spec.check(Method::m1);
  FillEngine engine(spec, wall_tangent_rules(spec.brick_side_lengths, spec.resolved_body_accounting()), rng);
  detail::run_wall_tangent_phases(engine);
  Packing p = engine.to_packing(Method::m1, true);
  if (!p.meta.goals_met) throw GoalUnreachable(std::move(p));
  return p;
}

Packing tile_by_reflection(const Packing& brick, const std::array<int, 3>& brick_numbers) {
  for (const int n : brick_numbers) {
    if (n < 1) throw DomainError("brick numbers must be positive");
  }
  const Vec3 side = brick.meta.extent;
  const std::size_t n = brick.spheres.size();
  Packing out;
  out.meta = brick.meta;
  out.meta.spec.brick_numbers = brick_numbers;
  out.meta.extent = {side.x * brick_numbers[0], side.y * brick_numbers[1], side.z * brick_numbers[2]};
  out.unit_brick_count = n;
  const std::size_t copies = static_cast<std::size_t>(brick_numbers[0]) * brick_numbers[1] * brick_numbers[2];
  out.spheres.reserve(n * copies);
  out.contacts.reserve(brick.contacts.size() * copies);

  std::size_t copy = 0;
  for (int k = 0; k < brick_numbers[2]; ++k) {
    for (int j = 0; j < brick_numbers[1]; ++j) {
      for (int i = 0; i < brick_numbers[0]; ++i, ++copy) {
        const std::array<int, 3> idx{i, j, k};
        for (const Sphere& s : brick.spheres) {
          Vec3 c;
          for (std::size_t a = 0; a < 3; ++a) {
            const double local = idx[a] % 2 == 1 ? side[a] - s.center[a] : s.center[a];
            c[a] = idx[a] * side[a] + local;
          }
          out.spheres.push_back({c, s.radius, out.spheres.size()});
        }
        const std::size_t offset = copy * n;
        for (const ContactPair& cp : brick.contacts) out.contacts.push_back({cp.i + offset, cp.j + offset});
      }
    }
  }
  if (copies == 1) return out;

  const double tol = brick.meta.spec.contact.contact_tolerance();
  out.contacts = detail::merge_contacts(std::move(out.contacts), detail::contact_pass(out.spheres, out.domain_box(), tol));
  if (brick.boundary_lists) {
    BoundaryLists lists;
    for (const Face f : kAllFaces) {
      const std::size_t a = face_axis(f);
      const double plane = face_is_max(f) ? out.meta.extent[a] : 0.0;
      for (const Sphere& s : out.spheres) {
        if (std::abs(s.center[a] - plane) - s.radius <= tol) lists[face_index(f)].push_back(s.id);
      }
    }
    out.boundary_lists = std::move(lists);
  }
  return out;
}

}  // namespace spherefill
