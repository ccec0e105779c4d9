#include "vanet/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "vanet/analytic.hpp"
#include "vanet/connectivity.hpp"

namespace vanet {
namespace {

constexpr std::size_t kMethodCount = 6;
constexpr std::array<std::string_view, kMethodCount> kMethodNames = {
    "analytic", "analytic-chain", "chain", "exponent", "laplacian", "oracle"};

constexpr std::uint64_t kHeadwayStream = 0;
constexpr std::uint64_t kRangeStream = 1;

std::size_t index_of(Method m) { return static_cast<std::size_t>(m); }

std::uint64_t digest_of(const HeadwayVector& h, const RangeAssignment& r) {
  std::uint64_t acc = 0xcbf29ce484222325ULL;
  auto feed = [&](double x) { acc = mix64(acc ^ std::bit_cast<std::uint64_t>(x)); };
  for (double g : h.gaps) feed(g);
  for (double v : r.ranges) feed(v);
  return acc;
}

double density_per_m(const ExperimentSpec& spec, std::size_t grid_index) {
  return spec.densities_per_km.at(grid_index) / 1000.0;
}

struct GridTally {
  std::array<std::size_t, kMethodCount> connected{};
  std::array<std::array<std::size_t, kMethodCount>, kMethodCount> disagree{};
  std::size_t reachable_not_chain = 0;
};

struct Tally {
  std::vector<GridTally> grid;

  void merge(const Tally& other) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      auto& dst = grid[g];
      const auto& src = other.grid[g];
      for (std::size_t m = 0; m < kMethodCount; ++m) {
        dst.connected[m] += src.connected[m];
        for (std::size_t k = 0; k < kMethodCount; ++k) dst.disagree[m][k] += src.disagree[m][k];
      }
      dst.reachable_not_chain += src.reachable_not_chain;
    }
  }
};

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs trials for the selected grid points. Each (grid, trial) item is
// independent and the reduction is an integer sum, so the result does not
// depend on the worker count or scheduling.
Tally tally(const ExperimentSpec& spec, const std::vector<std::size_t>& grid_points,
            unsigned workers, bool audit_reachability) {
  const std::size_t total = grid_points.size() * spec.trials;
  const std::size_t grid_size = spec.densities_per_km.size();
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(total, 1)));

  std::vector<Tally> local(workers, Tally{std::vector<GridTally>(grid_size)});
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 16;

  auto work = [&](unsigned w) {
    Tally& t = local[w];
    while (true) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= total) break;
      const std::size_t end = std::min(total, begin + kChunk);
      for (std::size_t item = begin; item < end; ++item) {
        const std::size_t g = grid_points[item / spec.trials];
        const std::size_t trial = item % spec.trials;
        const Realization r = draw_realization(spec, g, trial);
        const VerdictRecord rec = evaluate(spec, r);
        GridTally& gt = t.grid[g];
        for (const auto& a : rec.verdicts) {
          if (a.connected) ++gt.connected[index_of(a.method)];
          for (const auto& b : rec.verdicts) {
            if (index_of(a.method) < index_of(b.method) && a.connected != b.connected) {
              ++gt.disagree[index_of(a.method)][index_of(b.method)];
            }
          }
        }
        if (audit_reachability) {
          const Adjacency up = project(build_adjacency(r.spacing, r.ranges), Direction::upward);
          if (!consecutive_chain(up) && oracle_reachable(up, 0, up.size() - 1)) {
            ++gt.reachable_not_chain;
          }
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Tally out{std::vector<GridTally>(grid_size)};
  for (const auto& t : local) out.merge(t);
  return out;
}

std::vector<ConnectivityEstimate> estimates_for(const ExperimentSpec& spec, std::size_t g,
                                                const GridTally& gt) {
  std::vector<Method> methods = spec.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  const double rho = density_per_m(spec, g);
  const std::size_t n = vehicle_count(rho, spec.segment_length_m);
  const std::string label = describe(spec.policy);

  std::vector<ConnectivityEstimate> out;
  for (Method m : methods) {
    ConnectivityEstimate e;
    e.density_per_km = spec.densities_per_km[g];
    e.method = m;
    e.range_policy = label;
    e.master_seed = spec.master_seed;
    if (m == Method::analytic) {
      e.p_hat = analytic_pc({rho, mean_range(spec.policy), n});
    } else if (m == Method::analytic_chain) {
      e.p_hat = analytic_pc_chain_mixed(rho, n, spec.policy);
    } else {
      e.trials = spec.trials;
      e.connected_count = gt.connected[index_of(m)];
      e.p_hat = static_cast<double>(e.connected_count) / static_cast<double>(e.trials);
      e.std_error = binomial_std_error(e.p_hat, e.trials);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::size_t> all_grid_points(const ExperimentSpec& spec) {
  std::vector<std::size_t> g(spec.densities_per_km.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return g;
}

bool any_trial_based(const std::vector<Method>& methods) {
  return std::any_of(methods.begin(), methods.end(), is_trial_based);
}

}  // namespace

std::string_view to_string(Method m) { return kMethodNames[index_of(m)]; }

std::optional<Method> parse_method(std::string_view name) {
  for (std::size_t i = 0; i < kMethodCount; ++i) {
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  }
  if (name == "analytic_chain") return Method::analytic_chain;
  return std::nullopt;
}

bool is_trial_based(Method m) { return m != Method::analytic && m != Method::analytic_chain; }

std::string_view to_string(NetworkDirection d) {
  return d == NetworkDirection::undirected ? "undirected" : "upward";
}

std::optional<NetworkDirection> parse_direction(std::string_view name) {
  if (name == "undirected") return NetworkDirection::undirected;
  if (name == "upward") return NetworkDirection::upward;
  return std::nullopt;
}

void validate(const ExperimentSpec& spec) {
  if (spec.densities_per_km.empty()) throw std::invalid_argument("densities_per_km: must not be empty");
  for (double d : spec.densities_per_km) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("densities_per_km: values must be positive");
  }
  if (!(spec.segment_length_m > 0.0) || !std::isfinite(spec.segment_length_m)) {
    throw std::invalid_argument("segment_length_m: must be positive");
  }
  if (spec.methods.empty()) throw std::invalid_argument("methods: must not be empty");
  if (spec.trials < 1) throw std::invalid_argument("trials: must be at least 1");
  try {
    validate(spec.policy);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("range_policy: ") + e.what());
  }
  if (spec.direction == NetworkDirection::undirected &&
      !std::holds_alternative<FixedRange>(spec.policy)) {
    throw std::invalid_argument("direction: undirected requires a fixed range policy");
  }
}

std::size_t default_trials(const std::vector<Method>& methods) {
  const bool cubic = std::any_of(methods.begin(), methods.end(), [](Method m) {
    return m == Method::laplacian || m == Method::exponent;
  });
  return cubic ? 2000 : 10000;
}

Realization draw_realization(const ExperimentSpec& spec, std::size_t grid_index,
                             std::size_t trial_index) {
  const TrafficScenario scenario(density_per_m(spec, grid_index), spec.segment_length_m);
  Rng headway_rng(derive_seed(spec.master_seed, grid_index, trial_index, kHeadwayStream));
  Rng range_rng(derive_seed(spec.master_seed, grid_index, trial_index, kRangeStream));
  Realization r;
  r.headways = sample_headways(scenario, headway_rng);
  r.ranges = assign_ranges(spec.policy, scenario.vehicle_count(), range_rng);
  r.spacing = spacing_matrix(r.headways);
  r.digest = digest_of(r.headways, r.ranges);
  return r;
}

std::optional<bool> VerdictRecord::verdict(Method m) const {
  for (const auto& v : verdicts) {
    if (v.method == m) return v.connected;
  }
  return std::nullopt;
}

VerdictRecord evaluate(const ExperimentSpec& spec, const Realization& r) {
  VerdictRecord rec;
  rec.digest = r.digest;
  const Adjacency full = build_adjacency(r.spacing, r.ranges);
  const std::size_t n = full.size();
  const bool upward = spec.direction == NetworkDirection::upward;
  const Adjacency up = project(full, Direction::upward);
  const Adjacency& directed = upward ? up : full;

  std::vector<Method> methods = spec.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  for (Method m : methods) {
    bool connected = false;
    switch (m) {
      case Method::laplacian:
        connected = is_connected_laplacian(laplacian(upward ? symmetrize(up) : full));
        break;
      case Method::exponent:
        connected = is_connected_exponent(directed, spec.relaxed_exponent);
        break;
      case Method::oracle:
        connected = upward ? oracle_reachable(up, 0, n - 1) : oracle_components(full).q == 1;
        break;
      case Method::chain:
        connected = consecutive_chain(up);
        break;
      case Method::analytic:
      case Method::analytic_chain:
        continue;
    }
    rec.verdicts.push_back({m, connected, digest_of(r.headways, r.ranges)});
  }
  return rec;
}

VerdictRecord run_trial(const ExperimentSpec& spec, std::size_t grid_index, std::size_t trial_index) {
  if (trial_index >= spec.trials) throw std::out_of_range("run_trial: trial index out of range");
  VerdictRecord rec = evaluate(spec, draw_realization(spec, grid_index, trial_index));
  rec.grid_index = grid_index;
  rec.trial_index = trial_index;
  return rec;
}

double binomial_std_error(double p, std::size_t trials) {
  if (trials == 0 || p <= 0.0 || p >= 1.0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<ConnectivityEstimate> estimate(const ExperimentSpec& spec, std::size_t grid_index,
                                           unsigned workers) {
  validate(spec);
  if (grid_index >= spec.densities_per_km.size()) throw std::out_of_range("estimate: grid index out of range");
  Tally t{std::vector<GridTally>(spec.densities_per_km.size())};
  if (any_trial_based(spec.methods)) t = tally(spec, {grid_index}, workers, false);
  return estimates_for(spec, grid_index, t.grid[grid_index]);
}

std::vector<ConnectivityEstimate> sweep(const ExperimentSpec& spec, unsigned workers) {
  validate(spec);
  const auto points = all_grid_points(spec);
  Tally t{std::vector<GridTally>(points.size())};
  if (any_trial_based(spec.methods)) t = tally(spec, points, workers, false);

  std::vector<ConnectivityEstimate> out;
  for (std::size_t g : points) {
    auto rows = estimates_for(spec, g, t.grid[g]);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.density_per_km != b.density_per_km) return a.density_per_km < b.density_per_km;
    return a.method < b.method;
  });
  return out;
}

std::size_t AgreementReport::total_disagreements() const {
  std::size_t total = 0;
  for (const auto& p : pairs) total += p.disagreements;
  return total;
}

AgreementReport compare_methods(const ExperimentSpec& spec, unsigned workers) {
  validate(spec);
  std::vector<Method> methods;
  for (Method m : spec.methods) {
    if (is_trial_based(m)) methods.push_back(m);
  }
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  if (methods.size() < 2) {
    throw std::invalid_argument("compare_methods: need at least two trial-based methods");
  }

  const auto points = all_grid_points(spec);
  const Tally t = tally(spec, points, workers, true);

  AgreementReport report;
  for (std::size_t g : points) {
    const GridTally& gt = t.grid[g];
    for (std::size_t a = 0; a < methods.size(); ++a) {
      for (std::size_t b = a + 1; b < methods.size(); ++b) {
        report.pairs.push_back({spec.densities_per_km[g], methods[a], methods[b],
                                gt.disagree[index_of(methods[a])][index_of(methods[b])], spec.trials});
      }
    }
    report.reachable_not_chain.push_back(gt.reachable_not_chain);
  }
  return report;
}

}  // namespace vanet
