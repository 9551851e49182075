#include "spherefill/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spherefill {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kOnFace = 1e-6;

}  // namespace

std::string_view finding_kind_name(FindingKind k) {
  switch (k) {
    case FindingKind::overlap: return "overlap";
    case FindingKind::contact_outside_tolerance: return "contact_outside_tolerance";
    case FindingKind::missing_contact: return "missing_contact";
    case FindingKind::invalid_contact: return "invalid_contact";
    case FindingKind::boundary_not_qualifying: return "boundary_not_qualifying";
    case FindingKind::boundary_missing: return "boundary_missing";
    case FindingKind::outside_domain: return "outside_domain";
    case FindingKind::void_penetration: return "void_penetration";
  }
  return "?";
}

std::string Finding::describe() const {
  std::ostringstream os;
  os << finding_kind_name(kind) << ": " << i;
  switch (kind) {
    case FindingKind::boundary_not_qualifying:
    case FindingKind::boundary_missing:
      os << " face " << face_name(static_cast<Face>(j));
      break;
    case FindingKind::outside_domain:
      break;
    case FindingKind::void_penetration:
      os << " void " << j;
      break;
    default:
      os << " " << j;
  }
  os << " (" << value << ")";
  return os.str();
}

std::size_t ValidationReport::count(FindingKind k) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [k](const Finding& f) { return f.kind == k; }));
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (findings.empty()) {
    os << "no violations\n";
    return os.str();
  }
  os << findings.size() << " violation(s)\n";
  for (const Finding& f : findings) os << "  " << f.describe() << "\n";
  return os.str();
}

ValidationReport validate_packing(const Packing& p, const DomainSpec& spec) {
  ValidationReport report;
  auto add = [&](FindingKind k, std::size_t i, std::size_t j, double v) {
    report.findings.push_back({k, i, j, v});
  };

  const std::vector<Sphere>& s = p.spheres;
  const std::size_t n = s.size();
  const double tol = spec.contact.epsilon * spec.contact.mean_radius;
  const Method method = p.meta.method;
  const Vec3 ext = p.meta.extent;

  // Recorded contacts: well-formedness first, then an adjacency table for lookups.
  std::vector<std::vector<std::size_t>> recorded(n);
  for (std::size_t k = 0; k < p.contacts.size(); ++k) {
    const ContactPair& c = p.contacts[k];
    if (c.i >= n || c.j >= n || c.i >= c.j || (k > 0 && !(p.contacts[k - 1] < c))) {
      add(FindingKind::invalid_contact, c.i, c.j, 0.0);
      continue;
    }
    recorded[c.i].push_back(c.j);
  }
  for (auto& row : recorded) std::sort(row.begin(), row.end());
  auto is_recorded = [&](std::size_t i, std::size_t j) {
    const auto& row = recorded[i];
    return std::binary_search(row.begin(), row.end(), j);
  };

  // Recorded contacts must meet the epsilon rule.
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::size_t j : recorded[i]) {
      const double dx = s[i].center.x - s[j].center.x;
      const double dy = s[i].center.y - s[j].center.y;
      const double dz = s[i].center.z - s[j].center.z;
      const double g = std::sqrt(dx * dx + dy * dy + dz * dz) - s[i].radius - s[j].radius;
      if (std::abs(g) > tol + kSlack) add(FindingKind::contact_outside_tolerance, i, j, g);
    }
  }

  // All pairs: overlaps and missing contacts.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 ci = s[i].center;
    const double ri = s[i].radius;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double reach = ri + s[j].radius + tol + kSlack;
      const double dx = ci.x - s[j].center.x;
      if (std::abs(dx) > reach) continue;
      const double dy = ci.y - s[j].center.y;
      if (std::abs(dy) > reach) continue;
      const double dz = ci.z - s[j].center.z;
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 > reach * reach) continue;
      const double g = std::sqrt(d2) - ri - s[j].radius;
      if (g < -tol - kSlack) add(FindingKind::overlap, i, j, g);
      if (std::abs(g) <= tol - kSlack && !is_recorded(i, j)) add(FindingKind::missing_contact, i, j, g);
    }
  }

  // Containment.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 c = s[i].center;
    const double r = method == Method::m2 ? 0.0 : s[i].radius;
    for (std::size_t a = 0; a < 3; ++a) {
      const double out = std::max(r - c[a], c[a] + r - ext[a]);
      if (out > kSlack) {
        add(FindingKind::outside_domain, i, a, out);
        break;
      }
    }
  }

  if (method == Method::hemisphere && p.meta.hemisphere_radii) {
    const auto& radii = *p.meta.hemisphere_radii;
    for (std::size_t v = 0; v < 2; ++v) {
      const double h = radii[v];
      if (!(h > 0.0)) continue;
      const Vec3 vc{v == 0 ? 0.0 : ext.x, 0.5 * ext.y, 0.5 * ext.z};
      for (std::size_t i = 0; i < n; ++i) {
        const double g = distance(s[i].center, vc) - h - s[i].radius;
        if (g < -tol - kSlack) add(FindingKind::void_penetration, i, v, g);
      }
    }
  }

  // Boundary lists: face tangency within epsilon for m1, centers on the face for m2.
  if (p.boundary_lists) {
    for (const Face f : kAllFaces) {
      const std::size_t a = face_axis(f);
      const double plane = face_is_max(f) ? ext[a] : 0.0;
      auto wall_gap = [&](std::size_t i) {
        const double d = std::abs(s[i].center[a] - plane);
        return method == Method::m2 ? d : d - s[i].radius;
      };
      const double limit = method == Method::m2 ? kOnFace : tol;
      const double slack = method == Method::m2 ? 0.0 : kSlack;
      const auto& listed = (*p.boundary_lists)[face_index(f)];
      std::vector<char> in_list(n, 0);
      for (const std::size_t id : listed) {
        if (id >= n) {
          add(FindingKind::boundary_not_qualifying, id, face_index(f), 0.0);
          continue;
        }
        in_list[id] = 1;
        const double g = wall_gap(id);
        if (g > limit + slack) add(FindingKind::boundary_not_qualifying, id, face_index(f), g);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (in_list[i]) continue;
        const double g = wall_gap(i);
        if (g <= limit - slack) add(FindingKind::boundary_missing, i, face_index(f), g);
      }
    }
  }
  return report;
}

}  // namespace spherefill
