#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "vanet/rng.hpp"

namespace vanet {

struct FixedRange {
  double range_m;
};

// Each vehicle takes range_high with probability fraction_high, else range_low.
// With exact_count set, round(fraction_high * n) vehicles chosen uniformly at
// random get range_high instead.
struct TwoTierRange {
  double range_low_m;
  double range_high_m;
  double fraction_high;
  bool exact_count = false;
};

// Uniform ranges with the given mean and standard deviation. An empty support
// means continuous on [mean - sqrt(3) std, mean + sqrt(3) std]; otherwise each
// vehicle draws one of the listed values with equal probability.
struct UniformRange {
  double mean_m;
  double std_m;
  std::vector<double> support;

  bool continuous() const noexcept { return support.empty(); }
  double lower() const;
  double upper() const;
};

using RangePolicy = std::variant<FixedRange, TwoTierRange, UniformRange>;

// Throws std::invalid_argument when a policy invariant is violated.
void validate(const RangePolicy& policy);

// Expected range under the policy.
double mean_range(const RangePolicy& policy);

// Compact label used in CSV output, e.g. "fixed:750" or "two_tier:500/1000@0.5".
std::string describe(const RangePolicy& policy);

struct RangeAssignment {
  std::vector<double> ranges;
};

RangeAssignment assign_ranges(const RangePolicy& policy, std::size_t n, Rng& rng);

// Mean over vehicles of range^alpha; transmit power up to a constant factor.
double power_proxy(const RangeAssignment& assignment, double path_loss_exponent);

}  // namespace vanet
