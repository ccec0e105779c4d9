#include "vanet/range_policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vanet/overloaded.hpp"

namespace vanet {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double UniformRange::lower() const {
  return continuous() ? mean_m - kSqrt3 * std_m : *std::min_element(support.begin(), support.end());
}

double UniformRange::upper() const {
  return continuous() ? mean_m + kSqrt3 * std_m : *std::max_element(support.begin(), support.end());
}

void validate(const RangePolicy& policy) {
  std::visit(
      overloaded{
          [](const FixedRange& p) {
            if (!positive(p.range_m)) throw std::invalid_argument("range_m must be positive");
          },
          [](const TwoTierRange& p) {
            if (!positive(p.range_low_m) || !positive(p.range_high_m)) {
              throw std::invalid_argument("two-tier ranges must be positive");
            }
            if (!(p.range_low_m < p.range_high_m)) {
              throw std::invalid_argument("range_low_m must be below range_high_m");
            }
            if (!(p.fraction_high >= 0.0 && p.fraction_high <= 1.0)) {
              throw std::invalid_argument("fraction_high must lie in [0, 1]");
            }
          },
          [](const UniformRange& p) {
            if (!positive(p.mean_m)) throw std::invalid_argument("mean_m must be positive");
            if (!(p.std_m >= 0.0) || !std::isfinite(p.std_m)) {
              throw std::invalid_argument("std_m must be non-negative");
            }
            if (p.continuous()) {
              if (!(p.lower() > 0.0)) {
                throw std::invalid_argument("continuous support needs mean - sqrt(3) std > 0");
              }
              return;
            }
            for (double v : p.support) {
              if (!positive(v)) throw std::invalid_argument("support values must be positive");
            }
            const double k = static_cast<double>(p.support.size());
            const double mean = std::accumulate(p.support.begin(), p.support.end(), 0.0) / k;
            double var = 0.0;
            for (double v : p.support) var += (v - mean) * (v - mean);
            const double sd = std::sqrt(var / k);
            if (std::abs(mean - p.mean_m) > 1e-9 * std::abs(p.mean_m)) {
              throw std::invalid_argument("support mean disagrees with mean_m");
            }
            if (std::abs(sd - p.std_m) > 1e-9 * std::max(std::abs(p.std_m), std::abs(p.mean_m))) {
              throw std::invalid_argument("support standard deviation disagrees with std_m");
            }
          },
      },
      policy);
}

double mean_range(const RangePolicy& policy) {
  return std::visit(overloaded{
                        [](const FixedRange& p) { return p.range_m; },
                        [](const TwoTierRange& p) {
                          return (1.0 - p.fraction_high) * p.range_low_m +
                                 p.fraction_high * p.range_high_m;
                        },
                        [](const UniformRange& p) { return p.mean_m; },
                    },
                    policy);
}

std::string describe(const RangePolicy& policy) {
  return std::visit(
      overloaded{
          [](const FixedRange& p) { return "fixed:" + fmt(p.range_m); },
          [](const TwoTierRange& p) {
            return "two_tier:" + fmt(p.range_low_m) + "/" + fmt(p.range_high_m) + "@" +
                   fmt(p.fraction_high) + (p.exact_count ? "x" : "");
          },
          [](const UniformRange& p) {
            std::string s = "uniform:" + fmt(p.mean_m) + "~" + fmt(p.std_m);
            if (!p.continuous()) {
              s += "[";
              for (std::size_t i = 0; i < p.support.size(); ++i) {
                if (i) s += " ";
                s += fmt(p.support[i]);
              }
              s += "]";
            }
            return s;
          },
      },
      policy);
}

RangeAssignment assign_ranges(const RangePolicy& policy, std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("assign_ranges: need at least two vehicles");
  RangeAssignment out;
  out.ranges.resize(n);
  std::visit(
      overloaded{
          [&](const FixedRange& p) { std::fill(out.ranges.begin(), out.ranges.end(), p.range_m); },
          [&](const TwoTierRange& p) {
            if (!p.exact_count) {
              // u in (0, 1], so p = 0 never and p = 1 always selects the high range.
              for (double& r : out.ranges) {
                r = uniform_open_closed(rng) <= p.fraction_high ? p.range_high_m : p.range_low_m;
              }
              return;
            }
            const auto high = static_cast<std::size_t>(std::llround(p.fraction_high * n));
            std::fill(out.ranges.begin(), out.ranges.end(), p.range_low_m);
            std::fill(out.ranges.begin(), out.ranges.begin() + high, p.range_high_m);
            // Fisher-Yates with the portable uniform.
            for (std::size_t i = n - 1; i > 0; --i) {
              auto j = static_cast<std::size_t>(uniform_closed_open(rng) * (i + 1));
              std::swap(out.ranges[i], out.ranges[std::min(j, i)]);
            }
          },
          [&](const UniformRange& p) {
            if (p.continuous()) {
              const double lo = p.lower();
              const double width = p.upper() - lo;
              if (!(lo > 0.0)) {
                throw std::invalid_argument("continuous support needs mean - sqrt(3) std > 0");
              }
              for (double& r : out.ranges) r = lo + width * uniform_closed_open(rng);
              return;
            }
            const std::size_t k = p.support.size();
            for (double& r : out.ranges) {
              auto idx = static_cast<std::size_t>(uniform_closed_open(rng) * k);
              r = p.support[std::min(idx, k - 1)];
            }
          },
      },
      policy);
  return out;
}

double power_proxy(const RangeAssignment& assignment, double path_loss_exponent) {
  if (!(path_loss_exponent > 0.0)) {
    throw std::invalid_argument("path-loss exponent must be positive");
  }
  if (assignment.ranges.empty()) return 0.0;
  double acc = 0.0;
  for (double r : assignment.ranges) acc += std::pow(r, path_loss_exponent);
  return acc / static_cast<double>(assignment.ranges.size());
}

}  // namespace vanet
