// Command line front end: pack, validate, simulate, histogram.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "spherefill/config.hpp"
#include "spherefill/packing_io.hpp"
#include "spherefill/run.hpp"
#include "spherefill/validate.hpp"

namespace fs = std::filesystem;
using namespace spherefill;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kGoalMissed = 3,
  kInvalidPacking = 4,
  kUnstable = 5,
  kIo = 6,
};

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string method;
  bool allow_partial = false;
};

Method parse_method(const std::string& name) {
  if (name == "m1") return Method::m1;
  if (name == "m2") return Method::m2;
  if (name == "hemisphere") return Method::hemisphere;
  throw ConfigError("unknown method '" + name + "'", 0, "method");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = load_config(o.config);
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.seed) cfg.spec.seed = *o.seed;
  if (o.allow_partial) cfg.allow_partial = true;
  if (!o.method.empty()) {
    cfg.method = parse_method(o.method);
    if (cfg.method == Method::hemisphere && !cfg.hemisphere) {
      HemisphereDomain h;
      h.brick_side_lengths = cfg.spec.brick_side_lengths;
      cfg.hemisphere = h;
    }
    if (cfg.method != Method::hemisphere) cfg.hemisphere.reset();
    try {
      cfg.spec.check(cfg.method);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), 0, "method");
    }
  }
  return cfg;
}

void print_summary(const Packing& p, const fs::path& dir) {
  std::cout << "spheres " << p.size() << "  contacts " << p.contacts.size() << "  unit brick " << p.unit_brick_count
            << "\nbody fraction " << p.meta.achieved_body << " (" << body_accounting_name(p.meta.body_accounting)
            << "), goal " << p.meta.spec.body_goal << "\nface fractions";
  for (const Face f : kAllFaces) std::cout << ' ' << face_name(f) << '=' << p.meta.achieved_face[face_index(f)];
  std::cout << "\nwritten to " << dir.string() << '\n';
}

int cmd_pack(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  try {
    const Packing p = build_packing(cfg);
    write_pack_artifacts(p, cfg, cfg.output_dir);
    print_summary(p, cfg.output_dir);
    return kOk;
  } catch (const GoalUnreachable& e) {
    write_pack_artifacts(e.partial(), cfg, cfg.output_dir);
    print_summary(e.partial(), cfg.output_dir);
    std::cerr << "goal not reached: " << e.what() << '\n';
    return cfg.allow_partial ? kOk : kGoalMissed;
  }
}

int cmd_validate(const std::string& dir) {
  const Packing p = read_packing(dir);
  const ValidationReport report = validate_packing(p, p.meta.spec);
  std::cout << report.summary();
  return report.ok() ? kOk : kInvalidPacking;
}

int cmd_simulate(const Overrides& o, std::string packing_dir) {
  const RunConfig cfg = resolve(o);
  if (!cfg.simulation) throw ConfigError("no [simulation] section", 0, "simulation");
  if (packing_dir.empty()) packing_dir = cfg.output_dir.string();
  const Packing p = read_packing(packing_dir);
  const SimulationRun run = run_simulation(p, *cfg.simulation);
  const fs::path out = cfg.output_dir / "simulation";
  write_simulation_artifacts(p, run, out);
  std::cout << "particles " << p.size() << "  steps of " << run.dt << " s  bonds " << run.result.state.bonds.size()
            << "  snapshots " << run.result.snapshots.size() << "\nwritten to " << out.string() << '\n';
  return kOk;
}

int cmd_histogram(const std::string& dir, std::size_t bins, std::string out) {
  const Packing p = read_packing(dir);
  if (out.empty()) out = (fs::path(dir) / "radii_hist.csv").string();
  const std::vector<double> radii = p.radii();
  write_histogram(radius_histogram(radii, p.meta.spec.distribution, bins), out);
  std::cout << "spheres " << radii.size() << "  KS statistic " << ks_statistic(radii, p.meta.spec.distribution)
            << "\nwritten to " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polydisperse sphere packing and laser bonding simulation"};
  app.require_subcommand(1);

  Overrides pack_opts;
  auto* pack = app.add_subcommand("pack", "Fill the configured domain and write the packing");
  pack->add_option("--config", pack_opts.config, "Run configuration")->required()->check(CLI::ExistingFile);
  pack->add_option("--out", pack_opts.out, "Output directory (overrides the config)");
  pack->add_option("--seed", pack_opts.seed, "Seed (overrides the config)");
  pack->add_option("--method", pack_opts.method, "m1, m2 or hemisphere (overrides the config)")
      ->check(CLI::IsMember({"m1", "m2", "hemisphere"}));
  pack->add_flag("--allow-partial", pack_opts.allow_partial, "Exit 0 even when a fill goal is missed");

  std::string validate_dir;
  auto* validate = app.add_subcommand("validate", "Check a packing with the brute-force validator");
  validate->add_option("dir", validate_dir, "Packing directory")->required()->check(CLI::ExistingDirectory);

  Overrides sim_opts;
  std::string sim_packing;
  auto* simulate = app.add_subcommand("simulate", "Run the laser bonding simulation over a packing");
  simulate->add_option("--config", sim_opts.config, "Run configuration with a [simulation] section")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--packing", sim_packing, "Packing directory (defaults to the config output)");
  simulate->add_option("--out", sim_opts.out, "Output directory (overrides the config)");

  std::string hist_dir;
  std::string hist_out;
  std::size_t hist_bins = kHistogramBins;
  auto* histogram = app.add_subcommand("histogram", "Write radius bins next to the distribution density");
  histogram->add_option("dir", hist_dir, "Packing directory")->required()->check(CLI::ExistingDirectory);
  histogram->add_option("--bins", hist_bins, "Bin count")->check(CLI::PositiveNumber);
  histogram->add_option("--out", hist_out, "Output CSV (defaults to <dir>/radii_hist.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pack) return cmd_pack(pack_opts);
    if (*validate) return cmd_validate(validate_dir);
    if (*simulate) return cmd_simulate(sim_opts, sim_packing);
    if (*histogram) return cmd_histogram(hist_dir, hist_bins, hist_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const StabilityError& e) {
    std::cerr << "stability error (particle " << e.particle() << "): " << e.what() << '\n';
    return kUnstable;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
