// vanet_conn: connectivity-probability experiments for 1-D highway VANETs.
//
//   vanet_conn single   --density 10 --range 750 --trials 2000
//   vanet_conn sweep    --config run.json --trials 500 --output out.csv
//   vanet_conn analytic --density-start 2 --density-stop 25 --range 1000
//   vanet_conn figure fig5 --trials 1000 --seed 7
//   vanet_conn compare  --density 10 --policy two_tier --range-low 500
//                       --range-high 1000 --fraction-high 0.5
//                       --method laplacian --method chain --method oracle
//   vanet_conn selftest
//
// Results are CSV. Without --output they go to $VANET_OUTPUT_DIR/<command>.csv
// when that variable is set, else to stdout.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "vanet/analytic.hpp"
#include "vanet/config.hpp"
#include "vanet/csv.hpp"
#include "vanet/presets.hpp"
#include "vanet/selftest.hpp"

namespace {

using namespace vanet;

constexpr double kFreeFlowLimitPerKm = 25.0;

struct Flags {
  std::string config;
  std::vector<double> densities;
  std::optional<double> density_start, density_stop, density_step;
  std::optional<double> segment_length;
  std::optional<std::string> policy;
  std::optional<double> range, range_low, range_high, fraction_high, mean, std_dev;
  std::vector<double> support;
  bool exact_count = false;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::optional<std::string> direction;
  std::optional<std::string> output;
  std::optional<unsigned> workers;
  int verbosity = 0;
  bool relaxed = false;
};

void add_experiment_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--density", f.densities, "Traffic density in veh/km (repeatable)");
  cmd->add_option("--density-start", f.density_start, "Grid start, veh/km");
  cmd->add_option("--density-stop", f.density_stop, "Grid stop (inclusive), veh/km");
  cmd->add_option("--density-step", f.density_step, "Grid step, veh/km");
  cmd->add_option("--segment-length", f.segment_length, "Road segment length in meters");
  cmd->add_option("--policy", f.policy, "Range policy")->check(CLI::IsMember({"fixed", "two_tier", "uniform"}));
  cmd->add_option("--range", f.range, "Fixed communication range, m");
  cmd->add_option("--range-low", f.range_low, "Two-tier low range, m");
  cmd->add_option("--range-high", f.range_high, "Two-tier high range, m");
  cmd->add_option("--fraction-high", f.fraction_high, "Two-tier probability of the high range");
  cmd->add_flag("--exact-count", f.exact_count, "Two-tier: assign exactly round(p*N) high ranges");
  cmd->add_option("--mean", f.mean, "Uniform policy mean range, m");
  cmd->add_option("--std", f.std_dev, "Uniform policy standard deviation, m");
  cmd->add_option("--support", f.support, "Uniform policy discrete support values, m")->delimiter(',');
  cmd->add_option("--trials", f.trials, "Monte-Carlo trials per density");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--method", f.methods, "Method (repeatable): laplacian, exponent, oracle, chain, analytic, analytic-chain");
  cmd->add_option("--direction", f.direction, "undirected or upward");
  cmd->add_option("--output,-o", f.output, "Output CSV path");
  cmd->add_option("--workers,-j", f.workers, "Worker threads (0: all cores)");
  cmd->add_flag("--relaxed-exponent", f.relaxed, "Exponent test over walks of length <= N-1");
  cmd->add_flag("-v,--verbose", f.verbosity, "Increase verbosity");
}

RunConfig resolve(const Flags& f) {
  ConfigOverrides o;
  if (!f.densities.empty()) o.densities_per_km = f.densities;
  o.density_start = f.density_start;
  o.density_stop = f.density_stop;
  o.density_step = f.density_step;
  o.segment_length_m = f.segment_length;
  o.policy = f.policy;
  o.range_m = f.range;
  o.range_low_m = f.range_low;
  o.range_high_m = f.range_high;
  o.fraction_high = f.fraction_high;
  if (f.exact_count) o.exact_count = true;
  o.mean_m = f.mean;
  o.std_m = f.std_dev;
  if (!f.support.empty()) o.support = f.support;
  o.trials = f.trials;
  o.master_seed = f.seed;
  if (!f.methods.empty()) o.methods = f.methods;
  o.direction = f.direction;
  o.output = f.output;
  if (f.verbosity) o.verbosity = f.verbosity;
  o.workers = f.workers;
  if (f.relaxed) o.relaxed_exponent = true;
  return load_config(f.config, o);
}

void warn_density(const std::vector<double>& densities) {
  for (double d : densities) {
    if (d > kFreeFlowLimitPerKm) {
      std::cerr << "warning: density " << d << " veh/km exceeds the free-flow regime ("
                << kFreeFlowLimitPerKm << " veh/km); exponential headways are a poor fit there\n";
      return;
    }
  }
}

std::string default_output(const std::string& explicit_path, const std::string& stem, bool fallback_to_cwd) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv("VANET_OUTPUT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (stem + ".csv")).string();
  }
  return fallback_to_cwd ? stem + ".csv" : std::string{};
}

void write_table(std::vector<ConnectivityEstimate> table, const std::string& path) {
  if (path.empty()) {
    sort_table(table);
    write_csv(std::cout, table);
  } else {
    emit_csv(std::move(table), path);
    std::cerr << "wrote " << path << '\n';
  }
}

int cmd_estimates(const Flags& f, const std::string& stem, bool single) {
  RunConfig cfg = resolve(f);
  if (single && cfg.spec.densities_per_km.size() != 1) {
    throw ConfigError("densities_per_km", "single expects exactly one density");
  }
  warn_density(cfg.spec.densities_per_km);
  if (cfg.verbosity > 0) {
    std::cerr << "policy " << describe(cfg.spec.policy) << ", " << cfg.spec.densities_per_km.size()
              << " densities, " << cfg.spec.trials << " trials, seed " << cfg.spec.master_seed << '\n';
  }
  write_table(sweep(cfg.spec, cfg.workers), default_output(cfg.output, stem, false));
  return 0;
}

int cmd_analytic(const Flags& f, std::optional<double> target) {
  Flags g = f;
  if (g.methods.empty()) {
    g.methods = {"analytic"};
    if (g.policy && *g.policy != "fixed") g.methods.push_back("analytic-chain");
  }
  RunConfig cfg = resolve(g);
  for (Method m : cfg.spec.methods) {
    if (is_trial_based(m)) throw ConfigError("methods", "analytic accepts only analytic and analytic-chain");
  }
  warn_density(cfg.spec.densities_per_km);
  write_table(sweep(cfg.spec, 1), default_output(cfg.output, "analytic", false));
  if (target) {
    for (double d : cfg.spec.densities_per_km) {
      const double rho = d / 1000.0;
      const std::size_t n = vehicle_count(rho, cfg.spec.segment_length_m);
      std::cerr << "density " << format_float(d) << " veh/km, N=" << n << ": range for P_c=" << *target
                << " is " << format_float(min_range_for_target(rho, n, *target)) << " m\n";
    }
  }
  return 0;
}

int cmd_compare(const Flags& f) {
  RunConfig cfg = resolve(f);
  warn_density(cfg.spec.densities_per_km);
  const AgreementReport report = compare_methods(cfg.spec, cfg.workers);
  const std::string path = default_output(cfg.output, "compare", false);
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::ostream& os = path.empty() ? std::cout : file;
  os << "density_per_km,method_a,method_b,disagreements,trials,reachable_not_chain\n";
  const std::size_t pairs_per_density = report.pairs.size() / cfg.spec.densities_per_km.size();
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const auto& p = report.pairs[i];
    os << format_float(p.density_per_km) << ',' << to_string(p.method_a) << ',' << to_string(p.method_b) << ','
       << p.disagreements << ',' << p.trials << ',' << report.reachable_not_chain[i / pairs_per_density] << '\n';
  }
  std::cerr << "total disagreements: " << report.total_disagreements() << '\n';
  if (cfg.spec.direction == NetworkDirection::undirected && report.total_disagreements() != 0) {
    std::cerr << "error: methods disagree under a fixed range\n";
    return 1;
  }
  return 0;
}

int cmd_figure(const std::string& name, const Flags& f) {
  PresetOptions o;
  o.trials = f.trials;
  o.master_seed = f.seed.value_or(1);
  if (f.segment_length) o.segment_length_m = *f.segment_length;
  if (!f.densities.empty()) o.densities_per_km = f.densities;
  auto table = run_figure_preset(name, o, f.workers.value_or(0));
  const std::string path = default_output(f.output.value_or(""), name, true);
  emit_csv(table, path);
  std::cerr << "wrote " << path << " (" << table.size() << " rows)\n";
  for (const auto& d : curve_deviation(table, Method::laplacian, Method::analytic)) {
    std::cerr << "  " << d.range_policy << ": max |laplacian - analytic(mean range)| = "
              << format_float(d.max_abs_deviation) << " at " << format_float(d.at_density_per_km) << " veh/km\n";
  }
  return 0;
}

int cmd_selftest() {
  bool ok = true;
  for (const auto& r : run_selftest()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectivity probability of one-dimensional highway VANETs"};
  app.require_subcommand(1);

  Flags single_flags, sweep_flags, analytic_flags, compare_flags, figure_flags;
  std::optional<double> target;
  std::string preset;

  add_experiment_flags(app.add_subcommand("single", "Estimate at one density"), single_flags);
  add_experiment_flags(app.add_subcommand("sweep", "Estimate over a density grid"), sweep_flags);
  auto* analytic = app.add_subcommand("analytic", "Closed-form connectivity over a density grid");
  add_experiment_flags(analytic, analytic_flags);
  analytic->add_option("--target-pc", target, "Also report the minimum fixed range for this P_c")
      ->check(CLI::Range(0.0, 1.0));
  add_experiment_flags(app.add_subcommand("compare", "Per-realization method agreement audit"), compare_flags);

  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset (fig1, fig5, fig6)");
  figure->add_option("name", preset, "Preset name")->required();
  figure->add_option("--trials", figure_flags.trials, "Monte-Carlo trials per density");
  figure->add_option("--seed", figure_flags.seed, "Master seed");
  figure->add_option("--density", figure_flags.densities, "Restrict to these densities, veh/km");
  figure->add_option("--segment-length", figure_flags.segment_length, "Road segment length in meters");
  figure->add_option("--output,-o", figure_flags.output, "Output CSV path");
  figure->add_option("--workers,-j", figure_flags.workers, "Worker threads (0: all cores)");

  app.add_subcommand("selftest", "Golden-matrix and small-N equivalence checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("single")) return cmd_estimates(single_flags, "single", true);
    if (app.got_subcommand("sweep")) return cmd_estimates(sweep_flags, "sweep", false);
    if (app.got_subcommand("analytic")) return cmd_analytic(analytic_flags, target);
    if (app.got_subcommand("compare")) return cmd_compare(compare_flags);
    if (app.got_subcommand("figure")) return cmd_figure(preset, figure_flags);
    if (app.got_subcommand("selftest")) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
