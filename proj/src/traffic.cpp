#include "vanet/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vanet {

std::size_t vehicle_count(double density_per_m, double segment_length_m) {
  if (!(density_per_m > 0.0) || !std::isfinite(density_per_m)) {
    throw std::invalid_argument("density must be positive");
  }
  if (!(segment_length_m > 0.0) || !std::isfinite(segment_length_m)) {
    throw std::invalid_argument("segment length must be positive");
  }
  const double expected = std::round(density_per_m * segment_length_m);
  return std::max<std::size_t>(2, static_cast<std::size_t>(expected));
}

TrafficScenario::TrafficScenario(double density_per_m, double segment_length_m)
    : density_(density_per_m),
      segment_length_(segment_length_m),
      vehicle_count_(vanet::vehicle_count(density_per_m, segment_length_m)) {}

HeadwayVector sample_headways(const TrafficScenario& scenario, Rng& rng) {
  HeadwayVector out;
  out.gaps.resize(scenario.vehicle_count() - 1);
  const double rate = scenario.density();
  for (double& g : out.gaps) {
    g = -std::log(uniform_open_closed(rng)) / rate;
  }
  // u == 1 gives a zero gap; push it to the smallest positive value.
  for (double& g : out.gaps) {
    if (g <= 0.0) g = std::numeric_limits<double>::denorm_min();
  }
  return out;
}

SpacingMatrix spacing_matrix(const HeadwayVector& headways) {
  if (headways.gaps.empty()) {
    throw std::invalid_argument("spacing_matrix: empty headway vector");
  }
  const std::size_t n = headways.gaps.size() + 1;
  SpacingMatrix s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += headways.gaps[j - 1];
      s(i, j) = acc;
      s(j, i) = acc;
    }
  }
  return s;
}

}  // namespace vanet
