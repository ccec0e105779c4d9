#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vanet/graph.hpp"
#include "vanet/range_policy.hpp"
#include "vanet/traffic.hpp"

namespace vanet {

enum class Method { analytic, analytic_chain, chain, exponent, laplacian, oracle };

// CLI and CSV names: "analytic", "analytic-chain", "chain", "exponent",
// "laplacian", "oracle". Enumerator order matches name order.
std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
bool is_trial_based(Method m);

enum class NetworkDirection { undirected, upward };

std::string_view to_string(NetworkDirection d);
std::optional<NetworkDirection> parse_direction(std::string_view name);

struct ExperimentSpec {
  std::vector<double> densities_per_km;
  double segment_length_m = 10000.0;
  RangePolicy policy = FixedRange{750.0};
  std::vector<Method> methods;
  NetworkDirection direction = NetworkDirection::undirected;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  // Exponent test over powers of (A OR I) instead of exact-length walks.
  bool relaxed_exponent = false;
};

// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentSpec& spec);

// 2,000 when a cubic-cost method (laplacian, exponent) is requested, else 10,000.
std::size_t default_trials(const std::vector<Method>& methods);

// One random snapshot: gaps, ranges and the derived spacing matrix.
struct Realization {
  HeadwayVector headways;
  RangeAssignment ranges;
  SpacingMatrix spacing;
  std::uint64_t digest = 0;
};

// Headways and ranges come from separate counter-derived streams, so the same
// (seed, grid index, trial index) gives the same gaps under any range policy.
Realization draw_realization(const ExperimentSpec& spec, std::size_t grid_index,
                             std::size_t trial_index);

struct MethodVerdict {
  Method method;
  bool connected;
  std::uint64_t digest;  // digest of the realization this verdict observed
};

struct VerdictRecord {
  std::size_t grid_index = 0;
  std::size_t trial_index = 0;
  std::uint64_t digest = 0;
  std::vector<MethodVerdict> verdicts;

  std::optional<bool> verdict(Method m) const;
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

inline bool operator==(const MethodVerdict& a, const MethodVerdict& b) {
  return a.method == b.method && a.connected == b.connected && a.digest == b.digest;
}

// Verdicts of every trial-based method in the spec on one realization.
VerdictRecord evaluate(const ExperimentSpec& spec, const Realization& r);

VerdictRecord run_trial(const ExperimentSpec& spec, std::size_t grid_index, std::size_t trial_index);

struct ConnectivityEstimate {
  double density_per_km = 0.0;
  Method method = Method::oracle;
  std::string range_policy;
  double p_hat = 0.0;
  double std_error = 0.0;
  std::size_t connected_count = 0;
  std::size_t trials = 0;  // zero for closed-form rows
  std::uint64_t master_seed = 0;
};

// sqrt(p (1 - p) / trials); zero at p in {0, 1}.
double binomial_std_error(double p, std::size_t trials);

// One estimate per requested method at densities_per_km[grid_index].
// workers == 0 selects the hardware concurrency.
std::vector<ConnectivityEstimate> estimate(const ExperimentSpec& spec, std::size_t grid_index,
                                           unsigned workers = 1);

// Estimates over the whole density grid, ordered by density then method name.
std::vector<ConnectivityEstimate> sweep(const ExperimentSpec& spec, unsigned workers = 1);

struct PairDisagreement {
  double density_per_km;
  Method method_a;
  Method method_b;
  std::size_t disagreements;
  std::size_t trials;
};

struct AgreementReport {
  std::vector<PairDisagreement> pairs;  // density, then (a, b) with a < b
  // Per density: realizations where vehicle N is reachable from vehicle 1 on
  // the upward links but some consecutive link is missing.
  std::vector<std::size_t> reachable_not_chain;
  std::size_t total_disagreements() const;
};

// Requires at least two trial-based methods; throws std::invalid_argument otherwise.
AgreementReport compare_methods(const ExperimentSpec& spec, unsigned workers = 1);

}  // namespace vanet
