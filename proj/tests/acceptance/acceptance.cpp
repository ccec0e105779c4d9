// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vanet/analytic.hpp"
#include "vanet/connectivity.hpp"
#include "vanet/csv.hpp"
#include "vanet/disjoint_set.hpp"
#include "vanet/graph.hpp"
#include "vanet/montecarlo.hpp"
#include "vanet/presets.hpp"
#include "vanet/range_policy.hpp"
#include "vanet/rng.hpp"
#include "vanet/spectral.hpp"
#include "vanet/traffic.hpp"

using namespace vanet;

namespace {

constexpr double kSegment = 10000.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool passed;
  std::string detail;
};

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double d = start + static_cast<double>(i) * step;
    if (d > stop + 1e-9) break;
    out.push_back(d);
  }
  return out;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs fn(i) for i in [0, n) on all cores; results must be written by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

double pc_fixed(double density_per_km, double range_m) {
  const double rho = density_per_km / 1000.0;
  return analytic_pc({rho, range_m, vehicle_count(rho, kSegment)});
}

ExperimentSpec make_spec(std::vector<double> densities, RangePolicy policy, std::vector<Method> methods,
                         NetworkDirection direction, std::size_t trials) {
  ExperimentSpec s;
  s.densities_per_km = std::move(densities);
  s.segment_length_m = kSegment;
  s.policy = std::move(policy);
  s.methods = std::move(methods);
  s.direction = direction;
  s.trials = trials;
  s.master_seed = kSeed;
  return s;
}

const ConnectivityEstimate& row_for(const std::vector<ConnectivityEstimate>& t, double d, Method m) {
  for (const auto& r : t) {
    if (r.density_per_km == d && r.method == m) return r;
  }
  throw std::logic_error("missing row");
}

Outcome criterion_1() {
  const auto densities = grid(2, 24, 2);
  double worst_ratio = 0.0;
  std::string worst;
  for (double range : {500.0, 750.0, 1000.0}) {
    const auto spec = make_spec(densities, FixedRange{range}, {Method::oracle}, NetworkDirection::undirected, 20000);
    for (const auto& r : sweep(spec, 0)) {
      const double ref = pc_fixed(r.density_per_km, range);
      const double tol = std::max(3.0 * r.std_error, 0.01);
      const double ratio = std::abs(r.p_hat - ref) / tol;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = fmt("R=%g d=%g p_hat=%.4f analytic=%.4f tol=%.4f", range, r.density_per_km, r.p_hat, ref, tol);
      }
    }
  }
  return {worst_ratio <= 1.0, fmt("36 points, worst |dp|/tol=%.3f (%s)", worst_ratio, worst.c_str())};
}

Outcome criterion_2() {
  const auto densities = grid(2, 24, 2);
  std::size_t realizations = 0;
  std::size_t disagreements = 0;
  for (double range : {500.0, 750.0, 1000.0}) {
    const auto spec = make_spec(densities, FixedRange{range}, {Method::exponent, Method::laplacian, Method::oracle},
                                NetworkDirection::undirected, 100);
    const AgreementReport rep = compare_methods(spec, 0);
    disagreements += rep.total_disagreements();
    realizations += densities.size() * spec.trials;
  }
  return {realizations >= 2000 && disagreements == 0,
          fmt("%zu shared realizations, %zu disagreements", realizations, disagreements)};
}

Outcome criterion_3() {
  constexpr std::size_t kCases = 10000;
  std::vector<char> ok(kCases, 0);
  std::vector<std::size_t> sizes(kCases, 0);
  parallel_for(kCases, [&](std::size_t c) {
    Rng rng(derive_seed(kSeed, 3, c, 0));
    const auto n = static_cast<std::size_t>(2 + rng() % 249);
    const double rho = (2.0 + 23.0 * uniform_closed_open(rng)) / 1000.0;
    HeadwayVector h;
    for (std::size_t i = 0; i + 1 < n; ++i) h.gaps.push_back(-std::log(uniform_open_closed(rng)) / rho);
    RangeAssignment ranges;
    const bool fixed = c % 2 == 0;
    const double base = 200.0 + 1000.0 * uniform_closed_open(rng);
    for (std::size_t i = 0; i < n; ++i) ranges.ranges.push_back(fixed ? base : 200.0 + 1000.0 * uniform_closed_open(rng));
    const Adjacency full = build_adjacency(spacing_matrix(h), ranges);
    const Adjacency sym = fixed ? full : symmetrize(project(full, c % 4 == 1 ? Direction::upward : Direction::downward));
    const std::size_t spectral = component_count(eigenvalues_symmetric(laplacian(sym))).q;
    DisjointSet ds(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sym.test(i, j)) ds.unite(i, j);
      }
    }
    ok[c] = spectral == ds.set_count();
    sizes[c] = n;
  });
  const auto matches = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  return {matches == kCases, fmt("%zu/%zu matches, N in [%zu, %zu]", matches, kCases, *lo, *hi)};
}

Outcome criterion_4() {
  using Rows = std::vector<std::vector<int>>;
  const Rows want_a = {{0, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  const Rows want_au = {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const Rows want_ad = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  const Rows want_lu = {{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}};
  const Rows want_ld = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};

  const Adjacency a = build_adjacency(spacing_matrix(HeadwayVector{{200.0, 400.0}}), RangeAssignment{{300.0, 250.0, 500.0}});
  const Adjacency au = symmetrize(project(a, Direction::upward));
  const Adjacency ad = symmetrize(project(a, Direction::downward));
  const Laplacian lu = laplacian(au);
  const Laplacian ld = laplacian(ad);

  auto as_rows = [](const Laplacian& l) {
    Rows out(l.size(), std::vector<int>(l.size()));
    for (std::size_t i = 0; i < l.size(); ++i) {
      for (std::size_t j = 0; j < l.size(); ++j) {
        const double v = l.matrix()(i, j);
        out[i][j] = static_cast<int>(v);
        if (out[i][j] != v) out[i][j] = 99;
      }
    }
    return out;
  };

  std::vector<std::string> bad;
  if (a.to_rows() != want_a) bad.push_back("A");
  if (au.to_rows() != want_au) bad.push_back("A_u");
  if (ad.to_rows() != want_ad) bad.push_back("A_d");
  if (as_rows(lu) != want_lu) bad.push_back("L_u");
  if (as_rows(ld) != want_ld) bad.push_back("L_d");
  const bool down = is_connected_laplacian(ld);
  const bool up = is_connected_laplacian(lu);
  if (!down) bad.push_back("downward verdict");
  if (up) bad.push_back("upward verdict");
  std::string detail = bad.empty() ? "A, A_u, A_d, L_u, L_d exact; downward connected, upward disconnected"
                                   : "mismatch:";
  for (const auto& b : bad) detail += " " + b;
  return {bad.empty(), detail};
}

// Walks every upward pattern with the interval property: vehicle i reaches
// exactly i+1..i+k_i for some k_i in [0, n-1-i].
void for_each_interval_pattern(std::size_t n, const std::function<void(const Adjacency&)>& fn) {
  std::vector<std::size_t> k(n, 0);
  for (;;) {
    Adjacency a(n, Direction::upward);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j <= i + k[i]; ++j) a.set(i, j);
    }
    fn(a);
    std::size_t i = 0;
    while (i < n && k[i] == n - 1 - i) k[i++] = 0;
    if (i == n) return;
    ++k[i];
  }
}

Outcome criterion_5() {
  const auto densities = grid(2, 25, 1);
  const std::vector<Method> methods = {Method::chain, Method::exponent, Method::laplacian, Method::oracle};
  std::size_t realizations = 0;
  std::size_t chain_mismatch = 0;
  std::size_t reach_mismatch = 0;
  std::size_t reach_not_chain = 0;
  const std::vector<RangePolicy> policies = {TwoTierRange{500.0, 1000.0, 0.5}, UniformRange{750.0, 100.0, {}}};
  for (const auto& policy : policies) {
    const auto spec = make_spec(densities, policy, methods, NetworkDirection::upward, 420);
    const AgreementReport rep = compare_methods(spec, 0);
    for (const auto& p : rep.pairs) {
      if (p.method_a == Method::chain && p.method_b == Method::exponent) chain_mismatch += p.disagreements;
      if (p.method_a == Method::laplacian && p.method_b == Method::oracle) reach_mismatch += p.disagreements;
    }
    for (std::size_t c : rep.reachable_not_chain) reach_not_chain += c;
    realizations += densities.size() * spec.trials;
  }

  std::size_t patterns = 0;
  std::size_t exhaustive_mismatch = 0;
  for (std::size_t n = 2; n <= 7; ++n) {
    for_each_interval_pattern(n, [&](const Adjacency& a) {
      ++patterns;
      if (is_connected_exponent(a) != consecutive_chain(a)) ++exhaustive_mismatch;
    });
  }
  const bool ok = realizations >= 10000 && chain_mismatch == 0 && reach_mismatch == 0 && exhaustive_mismatch == 0;
  return {ok, fmt("%zu realizations: exponent!=chain %zu, laplacian!=reach %zu (reachable without chain: %zu); "
                  "%zu interval patterns N<=7: %zu mismatches",
                  realizations, chain_mismatch, reach_mismatch, reach_not_chain, patterns, exhaustive_mismatch)};
}

Outcome criterion_6() {
  const auto densities = grid(2, 25, 1);
  const std::vector<RangePolicy> policies = {TwoTierRange{500.0, 1000.0, 0.5}, UniformRange{750.0, 100.0, {}}};
  double worst_z = 0.0;
  std::string worst;
  std::size_t points = 0;
  for (const auto& policy : policies) {
    const auto spec = make_spec(densities, policy, {Method::chain}, NetworkDirection::upward, 10000);
    for (const auto& r : sweep(spec, 0)) {
      const double rho = r.density_per_km / 1000.0;
      const double ref = analytic_pc_chain_mixed(rho, vehicle_count(rho, kSegment), policy);
      const double sigma = std::max(r.std_error, binomial_std_error(ref, r.trials));
      const double z = sigma > 0 ? std::abs(r.p_hat - ref) / sigma : (r.p_hat == ref ? 0.0 : INFINITY);
      ++points;
      if (z > worst_z) {
        worst_z = z;
        worst = fmt("%s d=%g p_hat=%.4f ref=%.4f", describe(policy).c_str(), r.density_per_km, r.p_hat, ref);
      }
    }
  }
  return {worst_z <= 3.0, fmt("%zu points, worst |z|=%.2f (%s)", points, worst_z, worst.c_str())};
}

// Symmetrized-upward Laplacian verdicts, indexed [grid][trial].
std::vector<std::vector<char>> laplacian_verdicts(const ExperimentSpec& spec) {
  const std::size_t g = spec.densities_per_km.size();
  std::vector<char> flat(g * spec.trials, 0);
  parallel_for(flat.size(), [&](std::size_t k) {
    flat[k] = *run_trial(spec, k / spec.trials, k % spec.trials).verdict(Method::laplacian);
  });
  std::vector<std::vector<char>> out(g);
  for (std::size_t i = 0; i < g; ++i) {
    out[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * spec.trials),
                  flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * spec.trials));
  }
  return out;
}

double fraction(const std::vector<char>& v) {
  return static_cast<double>(std::count(v.begin(), v.end(), 1)) / static_cast<double>(v.size());
}

Outcome criterion_7() {
  const auto densities = grid(2, 25, 1);
  constexpr std::size_t kTrials = 1000;
  auto spec_for = [&](RangePolicy p) {
    return make_spec(densities, std::move(p), {Method::laplacian}, NetworkDirection::upward, kTrials);
  };
  const auto low = laplacian_verdicts(spec_for(FixedRange{500.0}));
  const auto high = laplacian_verdicts(spec_for(FixedRange{1000.0}));
  const auto mixed = laplacian_verdicts(spec_for(TwoTierRange{500.0, 1000.0, 0.5}));
  const auto all_low = laplacian_verdicts(spec_for(TwoTierRange{500.0, 1000.0, 0.0}));
  const auto all_high = laplacian_verdicts(spec_for(TwoTierRange{500.0, 1000.0, 1.0}));

  std::size_t coupling_violations = 0;
  std::size_t envelope_violations = 0;
  double max_dev = 0.0;
  double max_dev_at = 0.0;
  double worst_boundary_z = 0.0;
  for (std::size_t g = 0; g < densities.size(); ++g) {
    for (std::size_t t = 0; t < kTrials; ++t) {
      if (low[g][t] > mixed[g][t] || mixed[g][t] > high[g][t]) ++coupling_violations;
    }
    const double d = densities[g];
    const double p = fraction(mixed[g]);
    const double se = binomial_std_error(p, kTrials);
    const double lo = pc_fixed(d, 500.0);
    const double hi = pc_fixed(d, 1000.0);
    if (p < lo - 3.0 * std::max(se, binomial_std_error(lo, kTrials)) ||
        p > hi + 3.0 * std::max(se, binomial_std_error(hi, kTrials))) {
      ++envelope_violations;
    }
    const double dev = std::abs(p - pc_fixed(d, 750.0));
    if (dev > max_dev) {
      max_dev = dev;
      max_dev_at = d;
    }
    for (const auto& [curve, range] : {std::pair{&all_low, 500.0}, std::pair{&all_high, 1000.0}}) {
      const double pb = fraction((*curve)[g]);
      const double ref = pc_fixed(d, range);
      const double sigma = std::max(binomial_std_error(pb, kTrials), binomial_std_error(ref, kTrials));
      const double z = sigma > 0 ? std::abs(pb - ref) / sigma : (pb == ref ? 0.0 : INFINITY);
      worst_boundary_z = std::max(worst_boundary_z, z);
    }
  }
  const bool ok = coupling_violations == 0 && envelope_violations == 0 && max_dev <= 0.08 && worst_boundary_z <= 3.0;
  return {ok, fmt("coupling violations %zu, envelope violations %zu, max |p - analytic750| = %.4f at d=%g, "
                  "boundary fractions worst |z|=%.2f",
                  coupling_violations, envelope_violations, max_dev, max_dev_at, worst_boundary_z)};
}

Outcome criterion_8() {
  const auto densities = grid(2, 25, 1);
  double worst = 0.0;
  std::string detail;
  for (double mean : {500.0, 750.0, 1000.0}) {
    const auto spec = make_spec(densities, UniformRange{mean, 100.0, {}}, {Method::laplacian},
                                NetworkDirection::upward, 1000);
    double dev = 0.0;
    double at = 0.0;
    for (const auto& r : sweep(spec, 0)) {
      const double x = std::abs(r.p_hat - pc_fixed(r.density_per_km, mean));
      if (x > dev) {
        dev = x;
        at = r.density_per_km;
      }
    }
    worst = std::max(worst, dev);
    detail += fmt("%smean %g: %.4f at d=%g", detail.empty() ? "" : "; ", mean, dev, at);
  }
  return {worst <= 0.05, "max deviation " + detail};
}

Outcome criterion_9() {
  const double mixed = power_proxy(RangeAssignment{{500.0, 1000.0}}, 2.0);
  const double fixed = power_proxy(RangeAssignment{{750.0, 750.0}}, 2.0);
  return {mixed == 625000.0 && fixed == 562500.0 && mixed > fixed, fmt("mixed %.0f vs fixed %.0f", mixed, fixed)};
}

std::string preset_csv(std::string_view name, unsigned workers) {
  PresetOptions o;
  o.trials = 20;
  o.master_seed = kSeed;
  auto table = run_figure_preset(name, o, workers);
  sort_table(table);
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

Outcome criterion_10() {
  std::vector<std::string> bad;
  std::size_t bytes = 0;
  for (auto name : preset_names()) {
    const std::string one = preset_csv(name, 1);
    const std::string again = preset_csv(name, 1);
    const std::string many = preset_csv(name, 4);
    bytes += one.size();
    if (one != again || one != many) bad.emplace_back(name);
  }
  std::string detail = fmt("%zu presets, %zu CSV bytes, workers 1 vs 1 vs 4", preset_names().size(), bytes);
  for (const auto& b : bad) detail += " differs:" + b;
  return {bad.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"1 analytic agreement, traversal oracle", criterion_1},
      {"2 fixed-range method equivalence", criterion_2},
      {"3 zero eigenvalues equal component count", criterion_3},
      {"4 golden witness matrices", criterion_4},
      {"5 directed reductions", criterion_5},
      {"6 mixed-range chain closed form", criterion_6},
      {"7 two-tier envelope and tracking", criterion_7},
      {"8 uniform ranges track fixed mean", criterion_8},
      {"9 power budget", criterion_9},
      {"10 determinism across workers", criterion_10},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
