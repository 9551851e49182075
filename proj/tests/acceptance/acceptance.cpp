// Acceptance run: one PASS/FAIL line per criterion at the scales the
// shipped configurations describe, seed 0 throughout.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "spherefill/bonding.hpp"
#include "spherefill/config.hpp"
#include "spherefill/geometry.hpp"
#include "spherefill/method1.hpp"
#include "spherefill/method2.hpp"
#include "spherefill/packing_io.hpp"
#include "spherefill/run.hpp"
#include "spherefill/validate.hpp"

namespace fs = std::filesystem;
using namespace spherefill;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[missed] ";
    }
    detail << what << "; ";
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double x, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

struct Outcome {
  std::string name;
  RunConfig config;
  Packing packing;
  bool goals_met = false;
  double seconds = 0.0;
};

Outcome pack(const std::string& name, RunConfig config) {
  Outcome o{name, std::move(config), {}, false, 0.0};
  const auto t0 = Clock::now();
  try {
    o.packing = build_packing(o.config);
    o.goals_met = true;
  } catch (const GoalUnreachable& e) {
    o.packing = e.partial();
  }
  o.seconds = seconds_since(t0);
  return o;
}

std::vector<double> unit_brick_radii(const Packing& p) {
  std::vector<double> r;
  for (std::size_t i = 0; i < p.unit_brick_count && i < p.size(); ++i) r.push_back(p.spheres[i].radius);
  return r;
}

RunConfig shrink_to(RunConfig c, double side_in_rbar) {
  const double rbar = c.spec.mean_radius();
  const double scale = side_in_rbar * rbar / std::max({c.spec.brick_side_lengths.x, c.spec.brick_side_lengths.y,
                                                       c.spec.brick_side_lengths.z});
  c.spec.brick_side_lengths = c.spec.brick_side_lengths * scale;
  if (c.hemisphere) {
    c.hemisphere->brick_side_lengths = c.spec.brick_side_lengths;
    for (double& h : c.hemisphere->hemisphere_radii) h *= scale;
  }
  return c;
}

// ---------------------------------------------------------------- criterion 1

Verdict packing_validity(const std::vector<Outcome>& runs) {
  Verdict v;
  for (const Outcome& o : runs) {
    const ValidationReport r = validate_packing(o.packing, o.packing.meta.spec);
    v.require(r.ok(), o.name + " N=" + std::to_string(o.packing.size()) + " violations=" +
                          std::to_string(r.findings.size()) + (o.goals_met ? "" : " (partial)"));
    v.require(o.seconds <= 600.0, o.name + " " + fixed(o.seconds, 1) + " s");
  }
  return v;
}

Verdict smoke_validity(const fs::path& config_dir) {
  Verdict v;
  for (const char* name : {"example1a", "example2", "example3a", "example3b"}) {
    const Outcome o = pack(std::string(name) + "@8rbar", shrink_to(load_config(config_dir / (std::string(name) + ".cfg")), 8.0));
    const ValidationReport r = validate_packing(o.packing, o.packing.meta.spec);
    v.require(r.ok() && o.seconds <= 30.0,
              o.name + " N=" + std::to_string(o.packing.size()) + " violations=" + std::to_string(r.findings.size()) +
                  " " + fixed(o.seconds, 2) + " s");
  }
  return v;
}

// ---------------------------------------------------------------- criterion 2

Verdict count_bands(const Outcome& m1_15, const Outcome& m1_30, const Outcome& m2_gamma_30, const Outcome& m2_weibull_15) {
  Verdict v;
  auto band = [&](const Outcome& o, std::size_t lo, std::size_t hi) {
    const std::size_t n = o.packing.unit_brick_count;
    v.require(n >= lo && n <= hi, o.name + " unit brick N=" + std::to_string(n) + " in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]" + (o.goals_met ? "" : " (partial)"));
  };
  band(m1_15, 290, 540);
  band(m1_30, 2000, 3800);
  band(m2_gamma_30, 1300, 2300);
  band(m2_weibull_15, 440, 740);
  return v;
}

// ---------------------------------------------------------------- criterion 3

Verdict distribution_fidelity(const Outcome& cube30, const Outcome& cube15) {
  Verdict v;
  const RadiusDistribution& dist = cube30.packing.meta.spec.distribution;
  const std::vector<double> radii = unit_brick_radii(cube30.packing);
  const double d = ks_statistic(radii, dist);
  const double crit = ks_critical_value(radii.size(), 0.01);
  v.require(d <= crit, "30 rbar KS D=" + fixed(d) + " vs critical " + fixed(crit) + " at 1% (n=" +
                           std::to_string(radii.size()) + ")");
  const std::vector<double> small = unit_brick_radii(cube15.packing);
  double mean = 0.0;
  for (double r : small) mean += r;
  mean /= static_cast<double>(small.size());
  const double ratio = mean / cube15.packing.meta.spec.mean_radius();
  v.require(ratio >= 0.85 && ratio <= 1.05, "15 rbar realized mean " + fixed(ratio) + " rbar in [0.85, 1.05]");
  return v;
}

// ---------------------------------------------------------------- criterion 4

Verdict fill_goals(const std::vector<Outcome>& runs) {
  Verdict v;
  std::size_t successful = 0;
  for (const Outcome& o : runs) {
    if (!o.goals_met) {
      v.detail << o.name << " partial, body " << fixed(o.packing.meta.achieved_body) << " (not a successful run); ";
      continue;
    }
    ++successful;
    const Packing& p = o.packing;
    const DomainSpec& spec = p.meta.spec;
    double body = 0.0;
    if (p.meta.method == Method::hemisphere) {
      HemisphereDomain h;
      h.brick_side_lengths = p.meta.extent;
      h.hemisphere_radii = *p.meta.hemisphere_radii;
      body = achieved_body_fraction(p, p.domain_box(), h.carved_volume());
    } else {
      body = achieved_body_fraction(p, p.domain_box());
    }
    double worst_face = *std::min_element(p.meta.achieved_face.begin(), p.meta.achieved_face.end());
    if (p.boundary_lists) {
      for (const Face f : kAllFaces) {
        const std::size_t a = face_axis(f);
        const double area = p.meta.extent[(a + 1) % 3] * p.meta.extent[(a + 2) % 3];
        worst_face = std::min(worst_face, achieved_face_fraction(p, f, (*p.boundary_lists)[face_index(f)],
                                                                 p.meta.method != Method::m2, area));
      }
    }
    v.require(body >= spec.body_goal && worst_face >= spec.face_goal,
              o.name + " body " + fixed(body) + " >= " + fixed(spec.body_goal, 2) + ", min face " + fixed(worst_face) +
                  " >= " + fixed(spec.face_goal, 2));
  }
  v.require(successful > 0, std::to_string(successful) + " successful runs checked");
  return v;
}

// ---------------------------------------------------------------- criterion 5

Verdict reflection_tiling(const fs::path& config_dir) {
  Verdict v;
  RunConfig c = shrink_to(load_config(config_dir / "example1a.cfg"), 8.0);
  Rng rng(c.spec.seed);
  Packing brick;
  try {
    brick = fill_unit_brick_m1(c.spec, rng);
  } catch (const GoalUnreachable& e) {
    brick = e.partial();
  }
  const Packing t = tile_by_reflection(brick, {2, 2, 1});
  const std::size_t n = brick.size();
  v.require(t.size() == 4 * n, "m1 N=" + std::to_string(t.size()) + " = 4 x " + std::to_string(n));

  std::multiset<double> want;
  std::multiset<double> got;
  for (int k = 0; k < 4; ++k) {
    for (const Sphere& s : brick.spheres) want.insert(s.radius);
  }
  for (const Sphere& s : t.spheres) got.insert(s.radius);
  v.require(want == got, "radii multiset preserved");

  double worst = 0.0;
  for (std::size_t copy = 0; copy < 4; ++copy) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double g0 = gap(brick.spheres[i], brick.spheres[j]);
        const double g1 = gap(t.spheres[copy * n + i], t.spheres[copy * n + j]);
        worst = std::max(worst, std::abs(g1 - g0));
      }
    }
  }
  std::ostringstream gaps;
  gaps << "largest intra-brick gap change " << worst << " um";
  v.require(worst <= 1e-9, gaps.str());

  const double tol = c.spec.contact.contact_tolerance();
  const std::set<ContactPair> contacts(t.contacts.begin(), t.contacts.end());
  std::size_t tangent = 0;
  std::size_t paired = 0;
  std::size_t wrong = 0;
  // Shared faces: x_max of copy 0 faces copy 1, y_max of copy 0 faces copy 2.
  for (const auto& [face, partner] : {std::pair{Face::x_max, std::size_t{1}}, std::pair{Face::y_max, std::size_t{2}}}) {
    const std::size_t a = face_axis(face);
    for (const std::size_t i : (*brick.boundary_lists)[face_index(face)]) {
      const double wall_gap = brick.meta.extent[a] - brick.spheres[i].center[a] - brick.spheres[i].radius;
      const bool recorded = contacts.contains(ContactPair{i, partner * n + i});
      const bool qualifies = std::abs(2.0 * wall_gap) <= tol;
      if (std::abs(wall_gap) <= 1e-9) ++tangent;
      if (recorded) ++paired;
      if (recorded != qualifies) ++wrong;
    }
  }
  v.require(wrong == 0, "face spheres with mirror contacts " + std::to_string(paired) + " (" + std::to_string(tangent) +
                            " tangent), mismatches " + std::to_string(wrong));
  v.require(validate_packing(t, t.meta.spec).ok(), "tiled m1 packing validates");
  return v;
}

using PatternKey = std::tuple<long long, long long, long long>;

PatternKey key_of(const Vec3& c) {
  return {std::llround(c.x * 1e6), std::llround(c.y * 1e6), std::llround(c.z * 1e6)};
}

Verdict copy_tiling(const fs::path& config_dir) {
  Verdict v;
  RunConfig c = shrink_to(load_config(config_dir / "example2.cfg"), 8.0);
  Rng rng(c.spec.seed);
  Packing brick;
  try {
    brick = fill_unit_brick_m2(c.spec, rng);
  } catch (const GoalUnreachable& e) {
    brick = e.partial();
  }
  const Packing t = tile_by_copy(brick, {2, 2, 1});
  const Vec3 e = brick.meta.extent;

  std::set<PatternKey> distinct;
  for (int kx = 0; kx < 2; ++kx) {
    for (int ky = 0; ky < 2; ++ky) {
      for (const Sphere& s : brick.spheres) distinct.insert(key_of(s.center + Vec3{kx * e.x, ky * e.y, 0.0}));
    }
  }
  v.require(t.size() == distinct.size(), "m2 merged N=" + std::to_string(t.size()) + " vs " +
                                             std::to_string(distinct.size()) + " distinct positions from " +
                                             std::to_string(4 * brick.size()) + " copies");

  for (const Face f : {Face::z_min, Face::z_max}) {
    std::set<PatternKey> expected;
    for (int kx = 0; kx < 2; ++kx) {
      for (int ky = 0; ky < 2; ++ky) {
        for (const std::size_t i : (*brick.boundary_lists)[face_index(f)]) {
          expected.insert(key_of(brick.spheres[i].center + Vec3{kx * e.x, ky * e.y, 0.0}));
        }
      }
    }
    std::set<PatternKey> actual;
    for (const std::size_t i : (*t.boundary_lists)[face_index(f)]) actual.insert(key_of(t.spheres[i].center));
    v.require(actual == expected, std::string(face_name(f)) + " equals 4 translated brick faces (" +
                                      std::to_string(actual.size()) + " spheres)");
  }
  v.require(validate_packing(t, t.meta.spec).ok(), "tiled m2 packing validates");
  return v;
}

// ---------------------------------------------------------------- criterion 6

Verdict trilateration() {
  Verdict v;
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> pos(-30.0, 30.0);
  std::uniform_real_distribution<double> rad(2.0, 25.0);
  std::size_t checked = 0;
  std::size_t count_mismatch = 0;
  double worst = 0.0;
  std::size_t two = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::array<Sphere, 3> p{Sphere{{pos(gen), pos(gen), pos(gen)}, rad(gen), 0},
                                  Sphere{{pos(gen), pos(gen), pos(gen)}, rad(gen), 1},
                                  Sphere{{pos(gen), pos(gen), pos(gen)}, rad(gen), 2}};
    const double r = rad(gen);
    const long double cm = spherefill::testing::cayley_menger_apex(p[0].center, p[1].center, p[2].center,
                                                                   r + p[0].radius, r + p[1].radius, r + p[2].radius);
    const double scale = std::max({r + p[0].radius, r + p[1].radius, r + p[2].radius});
    if (std::fabs(cm) < 1e-6L * std::pow(static_cast<long double>(scale), 6)) continue;
    Candidates c;
    try {
      c = solve_contact_position(p, r);
    } catch (const DegenerateConfiguration&) {
      continue;
    }
    ++checked;
    if (c.count != (cm > 0 ? 2u : 0u)) ++count_mismatch;
    two += c.count == 2;
    for (const Vec3& x : c.view()) {
      for (const Sphere& s : p) {
        const double want = r + s.radius;
        worst = std::max(worst, std::abs(distance(x, s.center) - want) / want);
      }
    }
  }
  v.require(checked >= 9000, std::to_string(checked) + " triplets off the tangent boundary (" + std::to_string(two) +
                                 " with two candidates)");
  v.require(count_mismatch == 0, "candidate count mismatches " + std::to_string(count_mismatch));
  std::ostringstream w;
  w << "worst relative distance error " << worst;
  v.require(worst <= 1e-9, w.str());
  return v;
}

// ---------------------------------------------------------------- criterion 7

Packing pair_bed(double r1, double r2) {
  Packing p;
  p.spheres = {{{100, 100, 40}, r1, 0}, {{100 + r1 + r2, 100, 40}, r2, 1}};
  p.contacts = {{0, 1}};
  p.meta.extent = {200, 200, 50};
  p.meta.spec.with_distribution(RadiusDistribution::weibull(15.7, 3.55));
  return p;
}

Verdict energy_conservation() {
  Verdict v;
  PhysicalConstants c;
  c.laser_power = 0.0;
  c.convection_coefficient = 0.0;
  const BondingSimulator sim(pair_bed(11.0, 17.0), c);
  ThermalState s = sim.initial_state();
  s.temperature = {900.0, 300.0};
  auto energy = [&] {
    return particle_mass(11.0, c) * c.specific_heat * s.temperature[0] +
           particle_mass(17.0, c) * c.specific_heat * s.temperature[1];
  };
  const double e0 = energy();
  const double dt = 0.5 * sim.max_stable_time_step();
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    sim.step(s, std::nullopt, dt);
    worst = std::max(worst, std::abs(energy() - e0) / e0);
  }
  std::ostringstream os;
  os << "(a) 10^4 steps, worst relative energy drift " << worst;
  v.require(worst <= 1e-9, os.str());
  return v;
}

Verdict single_particle_ode() {
  Verdict v;
  const PhysicalConstants c;
  const double r = 14.14;
  Packing p;
  p.spheres = {{{0, 0, 45}, r, 0}};
  p.meta.extent = {100, 100, 50};
  p.meta.spec.with_distribution(RadiusDistribution::weibull(15.7, 3.55));
  const BondingSimulator sim(p, c);
  const double cap = particle_mass(r, c) * c.specific_heat;
  const double power = c.laser_power * std::pow(r / c.laser_radius, 3);
  const double rate = c.convection_coefficient / cap;
  const double fixed_point = c.ambient_temperature + power / c.convection_coefficient;
  const double dt = 1e-7;
  ThermalState s = sim.initial_state();
  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    sim.step(s, Vec2{0, 0}, dt);
    const double exact = fixed_point + (c.ambient_temperature - fixed_point) * std::exp(-rate * n * dt);
    worst = std::max(worst, std::abs(s.temperature[0] - exact) / std::abs(exact - c.ambient_temperature));
  }
  std::ostringstream os;
  os << "(b) 100 steps, rise " << fixed(s.temperature[0] - c.ambient_temperature, 1) << " K, worst relative error "
     << worst;
  v.require(worst <= 1e-3, os.str());
  return v;
}

// Horizontal distance from `q` to the polyline through the path positions.
double distance_to_path(const LaserPath& path, Vec2 q) {
  double best = std::numeric_limits<double>::infinity();
  const auto& seg = path.segments;
  for (std::size_t k = 0; k < seg.size(); ++k) {
    const Vec2 a = seg[k].position;
    const Vec2 b = k + 1 < seg.size() ? seg[k + 1].position : a;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    const double t = len2 > 0.0 ? std::clamp(((q.x - a.x) * dx + (q.y - a.y) * dy) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(q.x - a.x - t * dx, q.y - a.y - t * dy));
  }
  return best;
}

Verdict square_print(const fs::path& config_dir, const fs::path& work) {
  Verdict v;
  const auto t0 = Clock::now();
  const Outcome bed = pack("square_print", load_config(config_dir / "square_print.cfg"));
  const SimulationConfig& sim = *bed.config.simulation;
  const SimulationRun run = run_simulation(bed.packing, sim);
  write_simulation_artifacts(bed.packing, run, work / "square_print" / "simulation");
  write_pack_artifacts(bed.packing, bed.config, work / "square_print");
  const double seconds = seconds_since(t0);

  const double rl = sim.constants.laser_radius;
  std::set<std::size_t> bonded;
  std::size_t far_bonds = 0;
  double farthest = 0.0;
  for (const Bond& b : run.result.state.bonds) {
    bonded.insert(b.i);
    bonded.insert(b.j);
    for (const std::size_t id : {b.i, b.j}) {
      const Vec3 c = bed.packing.spheres[id].center;
      const double d = distance_to_path(sim.path, {c.x, c.y});
      farthest = std::max(farthest, d);
      if (d > 3.0 * rl) ++far_bonds;
    }
  }
  std::size_t under_beam = 0;
  for (const std::size_t id : bonded) {
    const Vec3 c = bed.packing.spheres[id].center;
    if (distance_to_path(sim.path, {c.x, c.y}) <= rl + bed.packing.spheres[id].radius) ++under_beam;
  }
  v.require(!run.result.state.bonds.empty(), "(c) " + std::to_string(bed.packing.size()) + " particles, " +
                                                 std::to_string(run.result.state.bonds.size()) + " bonds, " +
                                                 std::to_string(bonded.size()) + " bonded particles");
  v.require(far_bonds == 0, "bonds beyond 3 r_l of the path " + std::to_string(far_bonds) +
                                ", farthest bonded particle " + fixed(farthest, 1) + " um");
  v.require(!bonded.empty() && 10 * under_beam >= 9 * bonded.size(),
            std::to_string(under_beam) + " of " + std::to_string(bonded.size()) +
                " bonded particles inside the beam footprint (need 90%)");
  v.require(seconds <= 900.0, "packing and simulation " + fixed(seconds, 1) + " s");
  return v;
}

// ---------------------------------------------------------------- criterion 8

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(entry.path(), dir).string()] = ss.str();
  }
  return out;
}

Verdict determinism(const fs::path& config_dir, const fs::path& work) {
  Verdict v;
  RunConfig c = load_config(config_dir / "example1a.cfg");
  SimulationConfig sim;
  sim.dt.reset();
  sim.path.segments = {{{200, 200}, 2e-5}, {{230, 200}, 2e-5}};
  sim.snapshot_times = {1e-5};
  c.simulation = sim;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = work / "determinism" / run;
    fs::remove_all(dir);
    const Outcome o = pack(run, c);
    write_pack_artifacts(o.packing, c, dir);
    write_simulation_artifacts(o.packing, run_simulation(o.packing, *c.simulation), dir / "simulation");
  }
  const auto a = read_tree(work / "determinism" / "a");
  const auto b = read_tree(work / "determinism" / "b");
  std::size_t differing = 0;
  for (const auto& [name, bytes] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != bytes) ++differing;
  }
  v.require(a.size() == b.size() && differing == 0 && !a.empty(),
            std::to_string(a.size()) + " artifact files compared, " + std::to_string(differing) + " differ");
  return v;
}

void report(int number, const std::string& title, const Verdict& v, int& failures) {
  std::string detail = v.detail.str();
  if (detail.size() >= 2) detail.resize(detail.size() - 2);
  std::cout << "criterion " << number << " " << (v.pass ? "PASS" : "FAIL") << " (" << title << "): " << detail
            << std::endl;
  if (!v.pass) ++failures;
}

Verdict merge(Verdict a, const Verdict& b) {
  a.pass = a.pass && b.pass;
  a.detail << b.detail.str();
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks at the scales of the shipped configurations"};
  std::string work_dir = "acceptance_work";
  std::string config_dir = SPHEREFILL_CONFIG_DIR;
  app.add_option("--work-dir", work_dir, "Scratch directory for artifacts");
  app.add_option("--config-dir", config_dir, "Directory holding the example configurations")
      ->check(CLI::ExistingDirectory);
  CLI11_PARSE(app, argc, argv);
  const fs::path work = work_dir;
  const fs::path configs = config_dir;
  fs::create_directories(work);

  std::vector<Outcome> examples;
  for (const char* name : {"example1a", "example1b", "example1c", "example2", "example3a", "example3b"}) {
    examples.push_back(pack(name, load_config(configs / (std::string(name) + ".cfg"))));
    const Outcome& o = examples.back();
    std::cerr << "packed " << name << ": " << o.packing.size() << " spheres in " << fixed(o.seconds, 1) << " s"
              << (o.goals_met ? "" : " (partial)") << '\n';
  }
  RunConfig weibull_m2 = load_config(configs / "example2.cfg");
  weibull_m2.spec.with_distribution(examples[0].config.spec.distribution);
  const double side = 15.0 * weibull_m2.spec.mean_radius();
  weibull_m2.spec.brick_side_lengths = {side, side, side};
  const Outcome m2_weibull = pack("m2 weibull 15 rbar", weibull_m2);

  int failures = 0;
  report(1, "packing validity", merge(packing_validity(examples), smoke_validity(configs)), failures);
  report(2, "sphere-count bands", count_bands(examples[0], examples[1], examples[3], m2_weibull), failures);
  report(3, "distribution fidelity", distribution_fidelity(examples[1], examples[0]), failures);
  std::vector<Outcome> goal_runs = examples;
  goal_runs.push_back(m2_weibull);
  report(4, "fill goals", fill_goals(goal_runs), failures);
  report(5, "tiling correctness", merge(reflection_tiling(configs), copy_tiling(configs)), failures);
  report(6, "trilateration oracle", trilateration(), failures);
  report(7, "thermal simulation",
         merge(merge(energy_conservation(), single_particle_ode()), square_print(configs, work)), failures);
  report(8, "determinism", determinism(configs, work), failures);
  std::cout << (8 - failures) << " of 8 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
