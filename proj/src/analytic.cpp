#include "vanet/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "vanet/overloaded.hpp"

namespace vanet {
namespace {

// 1 - F(x) = exp(-density x).
double survival(double density, double x) { return x <= 0.0 ? 1.0 : std::exp(-density * x); }

}  // namespace

double headway_cdf(double density_per_m, double x) {
  if (!(x >= 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return -std::expm1(-density_per_m * x);
}

double analytic_pc(const AnalyticModel& model) {
  if (model.vehicle_count < 2) throw std::invalid_argument("analytic_pc: need at least two vehicles");
  if (!(model.density_per_m > 0.0)) throw std::invalid_argument("analytic_pc: density must be positive");
  if (!(model.range_m > 0.0)) throw std::invalid_argument("analytic_pc: range must be positive");
  if (std::isinf(model.range_m)) return 1.0;
  const double tail = std::exp(-model.density_per_m * model.range_m);
  return std::exp(static_cast<double>(model.vehicle_count - 1) * std::log1p(-tail));
}

double analytic_pc_chain_mixed(double density_per_m, std::size_t n, const RangePolicy& policy) {
  if (n < 2) throw std::invalid_argument("analytic_pc_chain_mixed: need at least two vehicles");
  if (!(density_per_m > 0.0)) throw std::invalid_argument("analytic_pc_chain_mixed: density must be positive");
  validate(policy);
  const double rho = density_per_m;
  // Expected tail probability E[exp(-rho R)]; 1 minus it is E[F(R)].
  const double mean_tail = std::visit(
      overloaded{
          [&](const FixedRange& p) { return survival(rho, p.range_m); },
          [&](const TwoTierRange& p) {
            return (1.0 - p.fraction_high) * survival(rho, p.range_low_m) +
                   p.fraction_high * survival(rho, p.range_high_m);
          },
          [&](const UniformRange& p) {
            if (p.continuous()) {
              const double a = p.lower();
              const double b = p.upper();
              if (b - a <= 0.0) return survival(rho, a);
              // (1/(b-a)) * integral_a^b exp(-rho x) dx
              return std::exp(-rho * a) * -std::expm1(-rho * (b - a)) / (rho * (b - a));
            }
            double acc = 0.0;
            for (double v : p.support) acc += survival(rho, v);
            return acc / static_cast<double>(p.support.size());
          },
      },
      policy);
  return std::exp(static_cast<double>(n - 1) * std::log1p(-mean_tail));
}

double min_range_for_target(double density_per_m, std::size_t n, double target_pc) {
  if (!(target_pc > 0.0 && target_pc < 1.0)) {
    throw std::invalid_argument("min_range_for_target: target must lie in (0, 1)");
  }
  if (n < 2) throw std::invalid_argument("min_range_for_target: need at least two vehicles");
  if (!(density_per_m > 0.0)) throw std::invalid_argument("min_range_for_target: density must be positive");
  // Per-gap target F = t^(1/(N-1)); 1 - F = -expm1(log(t)/(N-1)).
  const double tail = -std::expm1(std::log(target_pc) / static_cast<double>(n - 1));
  return -std::log(tail) / density_per_m;
}

}  // namespace vanet
