#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/montecarlo.hpp"

namespace vanet {

// Figure reproductions over a 10 km segment and densities 2..25 veh/km.
//   fig1: fixed 500/750/1000 m, undirected, every method plus the closed form.
//   fig5: upward, two-tier 500/1000 m with fraction_high 0, .25, .5, .75, 1.
//   fig6: upward, continuous uniform ranges, mean 500/750/1000 m, std 100 m.
struct PresetOptions {
  std::optional<std::size_t> trials;
  std::uint64_t master_seed = 1;
  std::optional<std::vector<double>> densities_per_km;
  double segment_length_m = 10000.0;
};

std::vector<std::string_view> preset_names();

// One spec per curve. Throws std::invalid_argument for an unknown name.
std::vector<ExperimentSpec> preset_specs(std::string_view name, const PresetOptions& options = {});

// All curves of a preset in one table, in CSV order.
std::vector<ConnectivityEstimate> run_figure_preset(std::string_view name, const PresetOptions& options = {},
                                                    unsigned workers = 0);

struct CurveDeviation {
  std::string range_policy;
  double max_abs_deviation = 0.0;
  double at_density_per_km = 0.0;
};

// Per range-policy label: max |p(measured) - p(reference)| over the densities
// where both methods have a row.
std::vector<CurveDeviation> curve_deviation(const std::vector<ConnectivityEstimate>& table, Method measured,
                                            Method reference);

}  // namespace vanet
