#include "vanet/presets.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "vanet/config.hpp"
#include "vanet/csv.hpp"

namespace vanet {
namespace {

ExperimentSpec base_spec(const PresetOptions& o, RangePolicy policy, NetworkDirection direction,
                         std::vector<Method> methods) {
  ExperimentSpec s;
  s.densities_per_km = o.densities_per_km.value_or(density_grid(2.0, 25.0, 1.0));
  s.segment_length_m = o.segment_length_m;
  s.policy = std::move(policy);
  s.direction = direction;
  s.methods = std::move(methods);
  s.trials = o.trials.value_or(default_trials(s.methods));
  s.master_seed = o.master_seed;
  return s;
}

}  // namespace

std::vector<std::string_view> preset_names() { return {"fig1", "fig5", "fig6"}; }

std::vector<ExperimentSpec> preset_specs(std::string_view name, const PresetOptions& o) {
  std::vector<ExperimentSpec> specs;
  if (name == "fig1") {
    for (double r : {500.0, 750.0, 1000.0}) {
      specs.push_back(base_spec(o, FixedRange{r}, NetworkDirection::undirected,
                                {Method::analytic, Method::chain, Method::exponent, Method::laplacian,
                                 Method::oracle}));
    }
  } else if (name == "fig5") {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      specs.push_back(base_spec(o, TwoTierRange{500.0, 1000.0, p}, NetworkDirection::upward,
                                {Method::analytic, Method::analytic_chain, Method::chain, Method::laplacian}));
    }
  } else if (name == "fig6") {
    for (double mean : {500.0, 750.0, 1000.0}) {
      specs.push_back(base_spec(o, UniformRange{mean, 100.0, {}}, NetworkDirection::upward,
                                {Method::analytic, Method::analytic_chain, Method::chain, Method::laplacian}));
    }
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig1, fig5 or fig6)");
  }
  return specs;
}

std::vector<ConnectivityEstimate> run_figure_preset(std::string_view name, const PresetOptions& options,
                                                    unsigned workers) {
  std::vector<ConnectivityEstimate> table;
  for (const auto& spec : preset_specs(name, options)) {
    auto rows = sweep(spec, workers);
    table.insert(table.end(), rows.begin(), rows.end());
  }
  sort_table(table);
  return table;
}

std::vector<CurveDeviation> curve_deviation(const std::vector<ConnectivityEstimate>& table, Method measured,
                                            Method reference) {
  using Key = std::pair<std::string, double>;
  std::map<Key, double> measured_p;
  std::map<Key, double> reference_p;
  for (const auto& e : table) {
    const Key k{e.range_policy, e.density_per_km};
    if (e.method == measured) measured_p[k] = e.p_hat;
    if (e.method == reference) reference_p[k] = e.p_hat;
  }
  std::map<std::string, CurveDeviation> by_policy;
  for (const auto& [k, p] : measured_p) {
    auto it = reference_p.find(k);
    if (it == reference_p.end()) continue;
    auto& d = by_policy.try_emplace(k.first, CurveDeviation{k.first, 0.0, k.second}).first->second;
    const double dev = std::abs(p - it->second);
    if (dev > d.max_abs_deviation) {
      d.max_abs_deviation = dev;
      d.at_density_per_km = k.second;
    }
  }
  std::vector<CurveDeviation> out;
  for (auto& [_, d] : by_policy) out.push_back(d);
  return out;
}

}  // namespace vanet
