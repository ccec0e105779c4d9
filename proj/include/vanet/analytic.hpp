#pragma once

#include <cstddef>

#include "vanet/range_policy.hpp"

namespace vanet {

// Closed-form model for a chain of N vehicles with i.i.d. exponential gaps.
struct AnalyticModel {
  double density_per_m;
  double range_m;
  std::size_t vehicle_count;
};

// Exponential headway CDF, 1 - exp(-density x) for x >= 0, else 0.
double headway_cdf(double density_per_m, double x);

// F(R)^(N-1): probability every gap is within range.
double analytic_pc(const AnalyticModel& model);

// E_R[F(R)]^(N-1) with the expectation over the range policy: the probability
// that each vehicle reaches its successor when ranges are drawn independently.
double analytic_pc_chain_mixed(double density_per_m, std::size_t n, const RangePolicy& policy);

// Smallest fixed range reaching the target probability. Throws
// std::invalid_argument unless 0 < target < 1.
double min_range_for_target(double density_per_m, std::size_t n, double target_pc);

}  // namespace vanet
