#include "vanet/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "vanet/connectivity.hpp"
#include "vanet/graph.hpp"
#include "vanet/spectral.hpp"
#include "vanet/traffic.hpp"

namespace vanet {
namespace {

using Rows = std::vector<std::vector<int>>;

Rows laplacian_rows(const Laplacian& l) {
  Rows out(l.size(), std::vector<int>(l.size()));
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < l.size(); ++j) out[i][j] = static_cast<int>(std::lround(l(i, j)));
  }
  return out;
}

bool spectrum_is(const Laplacian& l, std::vector<double> expected) {
  const auto s = eigenvalues_symmetric(l);
  if (s.eigenvalues.size() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (std::abs(s.eigenvalues[i] - expected[i]) > 1e-10) return false;
  }
  return true;
}

// Visits every strictly upper-triangular pattern of size n in which each row
// is a prefix run starting at the superdiagonal (the interval property).
void for_each_interval_pattern(std::size_t n, const std::function<void(const Adjacency&)>& visit) {
  std::vector<std::size_t> reach(n, 0);  // reach[i]: number of successors covered
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i + 1 >= n) {
      Adjacency a(n, Direction::upward);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 1; k <= reach[r]; ++k) a.set(r, r + k);
      }
      visit(a);
      return;
    }
    for (std::size_t len = 0; len <= n - 1 - i; ++len) {
      reach[i] = len;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;
  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  const Rows golden_a = {{0, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  const Rows golden_au = {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const Rows golden_ad = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  const Rows golden_lu = {{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}};
  const Rows golden_ld = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};

  // Gaps 200 and 400 m with ranges 300, 250, 500 m reproduce the example.
  const SpacingMatrix s = spacing_matrix(HeadwayVector{{200.0, 400.0}});
  const Adjacency a = build_adjacency(s, RangeAssignment{{300.0, 250.0, 500.0}});
  check("witness adjacency", a.to_rows() == golden_a);

  const Adjacency au = symmetrize(project(a, Direction::upward));
  const Adjacency ad = symmetrize(project(a, Direction::downward));
  check("upward pseudo-adjacency", au.to_rows() == golden_au);
  check("downward pseudo-adjacency", ad.to_rows() == golden_ad);

  const Laplacian lu = laplacian(au);
  const Laplacian ld = laplacian(ad);
  check("upward pseudo-Laplacian", laplacian_rows(lu) == golden_lu);
  check("downward pseudo-Laplacian", laplacian_rows(ld) == golden_ld);
  check("upward spectrum {0, 0, 2}", spectrum_is(lu, {0.0, 0.0, 2.0}));
  check("downward spectrum {0, 1, 3}", spectrum_is(ld, {0.0, 1.0, 3.0}));
  check("downward connected, upward not", is_connected_laplacian(ld) && !is_connected_laplacian(lu));
  check("exponent verdict on upward links", !is_connected_exponent(project(a, Direction::upward)));
  check("downward reachability 3 -> 1", oracle_reachable(project(a, Direction::downward), 2, 0));

  for (std::size_t n = 2; n <= 7; ++n) {
    std::size_t patterns = 0;
    std::size_t exponent_mismatch = 0;
    std::size_t spectral_mismatch = 0;
    for_each_interval_pattern(n, [&](const Adjacency& up) {
      ++patterns;
      if (is_connected_exponent(up) != consecutive_chain(up)) ++exponent_mismatch;
      if (is_connected_laplacian(laplacian(symmetrize(up))) != oracle_reachable(up, 0, n - 1)) {
        ++spectral_mismatch;
      }
    });
    std::ostringstream detail;
    detail << patterns << " patterns, " << exponent_mismatch << " exponent/chain and " << spectral_mismatch
           << " spectral/reachability mismatches";
    check("interval patterns N=" + std::to_string(n), exponent_mismatch == 0 && spectral_mismatch == 0,
          detail.str());
  }
  return out;
}

}  // namespace vanet
