#pragma once

#include <cstddef>
#include <vector>

#include "vanet/matrix.hpp"
#include "vanet/rng.hpp"

namespace vanet {

// Free-flow traffic setting on a road segment. Density in vehicles per meter.
class TrafficScenario {
 public:
  TrafficScenario(double density_per_m, double segment_length_m);

  double density() const noexcept { return density_; }
  double segment_length() const noexcept { return segment_length_; }
  std::size_t vehicle_count() const noexcept { return vehicle_count_; }

  static TrafficScenario from_per_km(double density_per_km, double segment_length_m) {
    return {density_per_km / 1000.0, segment_length_m};
  }

 private:
  double density_;
  double segment_length_;
  std::size_t vehicle_count_;
};

// max(2, round(density * length)). Throws std::invalid_argument on non-positive input.
std::size_t vehicle_count(double density_per_m, double segment_length_m);

// Inter-vehicle gaps in meters, N - 1 entries, all > 0.
struct HeadwayVector {
  std::vector<double> gaps;
};

// N - 1 exponential gaps with mean 1/density, by inverse CDF -ln(u)/density.
HeadwayVector sample_headways(const TrafficScenario& scenario, Rng& rng);

// Pairwise distances between vehicles. Zero diagonal, symmetric, additive.
using SpacingMatrix = SquareMatrix<double>;

// entries(i, j) = sum of gaps i .. j-1 for j > i, mirrored below the diagonal.
SpacingMatrix spacing_matrix(const HeadwayVector& headways);

}  // namespace vanet
