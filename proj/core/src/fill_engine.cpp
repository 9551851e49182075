#include "spherefill/fill_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spherefill {

namespace {

constexpr double kOnPlane = 1e-6;

double grid_cell_size(const DomainSpec& spec) {
  return 2.0 * spec.distribution.quantile(0.999);
}

Box grid_bounds(const Box& brick) {
  const double pad = 1e-6 * std::max({brick.size().x, brick.size().y, brick.size().z});
  return brick.expanded(pad);
}

}  // namespace

void FillEngine::PruneState::reset(std::size_t n) {
  failures.assign(n, 0);
  pruned.assign(n, 0);
}

void FillEngine::PruneState::grow(std::size_t n) {
  if (failures.size() < n) {
    failures.resize(n, 0);
    pruned.resize(n, 0);
  }
}

FillEngine::FillEngine(const DomainSpec& spec, FillRules rules, Rng& rng)
    : spec_(spec),
      rules_(rules),
      rng_(rng),
      contact_tol_(spec.contact.contact_tolerance()),
      parent_tol_(spec.contact.parent_tolerance()),
      grid_(grid_bounds(rules.brick), grid_cell_size(spec)) {
  if (!(rules_.body_volume > 0.0)) throw DomainError("fill rules need a positive body volume");
  for (const double a : rules_.face_area) {
    if (!(a > 0.0)) throw DomainError("fill rules need positive face areas");
  }
}

std::size_t FillEngine::add_obstacle(const Vec3& center, double radius) {
  return insert(center, radius, true);
}

bool FillEngine::fits(const Vec3& center, double radius) const {
  bool ok = true;
  grid_.for_each_candidate(center, radius, 0.0, [&](std::size_t j) {
    if (!ok) return;
    const Sphere& b = bodies_[j];
    if (distance(center, b.center) - radius - b.radius < -contact_tol_) ok = false;
  });
  return ok;
}

bool FillEngine::inside_brick(const Vec3& c, double r) const {
  for (std::size_t a = 0; a < 3; ++a) {
    if (c[a] - r < rules_.brick.lo[a] || c[a] + r > rules_.brick.hi[a]) return false;
  }
  return true;
}

bool FillEngine::on_face(const Sphere& s, Face f) const {
  const std::size_t a = face_axis(f);
  const double plane = face_is_max(f) ? rules_.brick.hi[a] : rules_.brick.lo[a];
  const double d = std::abs(s.center[a] - plane);
  return rules_.centered_faces ? d <= kOnPlane : d - s.radius <= contact_tol_;
}

std::size_t FillEngine::insert(const Vec3& center, double radius, bool obstacle) {
  const std::size_t id = bodies_.size();
  const Sphere s{center, radius, id};
  std::vector<std::size_t> near;
  grid_.for_each_candidate(center, radius, parent_tol_, [&](std::size_t j) {
    const double g = gap(s, bodies_[j]);
    if (g > parent_tol_) return;
    near.push_back(j);
    neighbors_[j].push_back(id);
    if (!obstacle && !obstacle_[j] && std::abs(g) <= contact_tol_) contacts_.push_back({j, id});
  });
  std::sort(near.begin(), near.end());
  grid_.insert(s);
  bodies_.push_back(s);
  obstacle_.push_back(obstacle ? 1 : 0);
  neighbors_.push_back(std::move(near));
  if (obstacle) {
    ++obstacle_count_;
    return id;
  }

  const Box& brick = rules_.brick;
  for (const Face f : kAllFaces) {
    if (!on_face(s, f)) continue;
    const std::size_t a = face_axis(f);
    const std::size_t u = (a + 1) % 3;
    const std::size_t v = (a + 2) % 3;
    face_covered_[face_index(f)] +=
        rules_.centered_faces
            ? std::numbers::pi * radius * radius
            : disk_rect_area({center[u], center[v]}, radius, {brick.lo[u], brick.lo[v]}, {brick.hi[u], brick.hi[v]});
  }
  if (brick.contains(center)) {
    body_filled_ += rules_.body_accounting == BodyAccounting::full ? ball_volume(radius)
                                                                    : sphere_box_volume(center, radius, brick);
  }
  return id;
}

std::optional<std::size_t> FillEngine::try_place(std::span<const Vec3> centers, double radius) {
  if (centers.empty() || !(radius > 0.0)) return std::nullopt;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (!fits(centers[k], radius)) return std::nullopt;
    for (std::size_t m = 0; m < k; ++m) {
      if (distance(centers[k], centers[m]) - 2.0 * radius < -contact_tol_) return std::nullopt;
    }
  }
  const std::size_t first = bodies_.size();
  for (const Vec3& c : centers) insert(c, radius, false);
  return first;
}

bool FillEngine::record_failure(PruneState& st, std::span<const std::size_t> members) {
  bool dropped = false;
  for (const std::size_t m : members) {
    if (++st.failures[m] >= spec_.tuning.prune_after && !st.pruned[m]) {
      st.pruned[m] = 1;
      dropped = true;
    }
  }
  return dropped;
}

void FillEngine::record_success(PruneState& st, std::span<const std::size_t> members) {
  for (const std::size_t m : members) st.failures[m] = 0;
}

std::optional<std::size_t> FillEngine::place_interior_sphere(double radius) {
  PruneState& st = interior_prune_;
  st.grow(bodies_.size());
  const std::size_t cap = spec_.tuning.triplet_cap;
  std::size_t tried = 0;
  std::vector<std::size_t> older;

  for (std::size_t a = bodies_.size(); a-- > 0;) {
    if (st.pruned[a]) continue;
    older.clear();
    for (auto it = neighbors_[a].rbegin(); it != neighbors_[a].rend(); ++it) {
      if (*it < a && !st.pruned[*it]) older.push_back(*it);
    }
    for (std::size_t i = 0; i < older.size() && !st.pruned[a]; ++i) {
      for (std::size_t j = i + 1; j < older.size() && !st.pruned[a]; ++j) {
        const std::size_t b = older[i];
        const std::size_t c = older[j];
        if (st.pruned[b]) break;
        if (st.pruned[c]) continue;
        const std::array<std::size_t, 3> ids{a, b, c};
        const std::array<Sphere, 3> parents{bodies_[a], bodies_[b], bodies_[c]};
        Candidates cands;
        try {
          cands = solve_contact_position(parents, radius);
        } catch (const DegenerateConfiguration&) {
          cands = {};
        }
        for (const Vec3& p : cands.view()) {
          if (!inside_brick(p, radius)) continue;
          if (auto id = try_place(p, radius)) {
            record_success(st, ids);
            return id;
          }
        }
        record_failure(st, ids);
        if (++tried >= cap) return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> FillEngine::place_face_sphere(Face f, double radius, bool centered,
                                                         bool opposite_copy) {
  PruneState& st = face_prune_;
  st.grow(bodies_.size());
  const std::size_t axis = face_axis(f);
  const std::size_t u = (axis + 1) % 3;
  const std::size_t v = (axis + 2) % 3;
  const Box& brick = rules_.brick;
  const bool is_max = face_is_max(f);
  const AxisPlane plane{axis, is_max ? brick.hi[axis] : brick.lo[axis], is_max ? -1 : 1};
  const double opposite = is_max ? brick.lo[axis] : brick.hi[axis];
  const double height = centered ? 0.0 : radius;
  auto near_face = [&](std::size_t id) {
    return std::abs(plane.signed_distance(bodies_[id].center)) - bodies_[id].radius <= parent_tol_;
  };
  auto in_face = [&](const Vec3& p) {
    return p[u] - radius >= brick.lo[u] && p[u] + radius <= brick.hi[u] && p[v] - radius >= brick.lo[v] &&
           p[v] + radius <= brick.hi[v];
  };

  const std::size_t cap = spec_.tuning.triplet_cap;
  std::size_t tried = 0;
  for (std::size_t a = bodies_.size(); a-- > 0;) {
    if (st.pruned[a] || !near_face(a)) continue;
    for (auto it = neighbors_[a].rbegin(); it != neighbors_[a].rend() && !st.pruned[a]; ++it) {
      const std::size_t b = *it;
      if (b >= a || st.pruned[b] || !near_face(b)) continue;
      const std::array<std::size_t, 2> ids{a, b};
      Candidates cands;
      try {
        cands = solve_planar_contact(bodies_[a], bodies_[b], radius, plane, height);
      } catch (const DegenerateConfiguration&) {
        cands = {};
      }
      for (const Vec3& p : cands.view()) {
        if (!in_face(p)) continue;
        std::array<Vec3, 2> group{p, p};
        group[1][axis] = opposite;
        if (auto id = try_place(std::span<const Vec3>(group.data(), opposite_copy ? 2 : 1), radius)) {
          record_success(st, ids);
          return id;
        }
      }
      record_failure(st, ids);
      if (++tried >= cap) return std::nullopt;
    }
  }
  return std::nullopt;
}

bool FillEngine::fill_face(Face f, bool centered, bool opposite_copy) {
  face_prune_.reset(bodies_.size());
  std::size_t failures = 0;
  while (face_fraction(f) < spec_.face_goal) {
    if (failures >= spec_.tuning.failure_limit) return false;
    const double r = draw_radius();
    if (place_face_sphere(f, r, centered, opposite_copy)) {
      failures = 0;
    } else {
      ++failures;
    }
  }
  return true;
}

bool FillEngine::fill_interior() {
  interior_prune_.reset(bodies_.size());
  std::size_t failures = 0;
  while (body_fraction() < spec_.body_goal) {
    if (failures >= spec_.tuning.failure_limit) return false;
    const double r = draw_radius();
    if (place_interior_sphere(r)) {
      failures = 0;
    } else {
      ++failures;
    }
  }
  return true;
}

Packing FillEngine::to_packing(Method method, bool with_boundary_lists) const {
  Packing p;
  std::vector<std::size_t> out_id(bodies_.size(), 0);
  p.spheres.reserve(sphere_count());
  for (std::size_t id = 0; id < bodies_.size(); ++id) {
    if (obstacle_[id]) continue;
    out_id[id] = p.spheres.size();
    p.spheres.push_back({bodies_[id].center, bodies_[id].radius, p.spheres.size()});
  }
  p.contacts.reserve(contacts_.size());
  for (const ContactPair& c : contacts_) p.contacts.push_back({out_id[c.i], out_id[c.j]});
  normalize_contacts(p.contacts);

  p.meta.method = method;
  p.meta.spec = spec_;
  p.meta.extent = rules_.brick.hi;
  p.unit_brick_count = p.spheres.size();

  BoundaryLists lists;
  for (const Face f : kAllFaces) {
    auto& members = lists[face_index(f)];
    for (const Sphere& s : p.spheres) {
      if (on_face(s, f)) members.push_back(s.id);
    }
    p.meta.achieved_face[face_index(f)] =
        achieved_face_fraction(p, f, members, !rules_.centered_faces, rules_.face_area[face_index(f)]);
  }
  if (with_boundary_lists) p.boundary_lists = std::move(lists);
  p.meta.body_accounting = rules_.body_accounting;
  p.meta.achieved_body_clipped = achieved_body_fraction(p, rules_.brick, rules_.body_volume);
  p.meta.achieved_body = rules_.body_accounting == BodyAccounting::full
                             ? whole_ball_fraction(p, rules_.brick, rules_.body_volume)
                             : p.meta.achieved_body_clipped;
  p.meta.goals_met = p.meta.achieved_body >= spec_.body_goal &&
                     std::all_of(p.meta.achieved_face.begin(), p.meta.achieved_face.end(),
                                 [&](double v) { return v >= spec_.face_goal; });
  return p;
}

}  // namespace spherefill
