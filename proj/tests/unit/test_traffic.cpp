#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vanet/traffic.hpp"

using namespace vanet;

TEST_SUITE("traffic") {
  TEST_CASE("vehicle_count rounds density times length with a floor of two") {
    CHECK(vehicle_count(0.010, 10000.0) == 100);
    CHECK(vehicle_count(0.0001, 10000.0) == 2);
    CHECK(vehicle_count(0.025, 10000.0) == 250);
    CHECK_THROWS_AS(vehicle_count(0.0, 10000.0), std::invalid_argument);
    CHECK_THROWS_AS(vehicle_count(0.01, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(TrafficScenario(-0.01, 10000.0), std::invalid_argument);
  }

  TEST_CASE("scenario from veh/km") {
    const auto s = TrafficScenario::from_per_km(12.0, 10000.0);
    CHECK(s.density() == doctest::Approx(0.012));
    CHECK(s.vehicle_count() == 120);
  }

  TEST_CASE("headways are deterministic, positive and sized N-1") {
    const TrafficScenario s(0.01, 10000.0);
    Rng a(42), b(42);
    const auto h1 = sample_headways(s, a);
    const auto h2 = sample_headways(s, b);
    CHECK(h1.gaps == h2.gaps);
    CHECK(h1.gaps.size() == 99);
    CHECK(std::all_of(h1.gaps.begin(), h1.gaps.end(), [](double g) { return g > 0.0; }));
  }

  TEST_CASE("headway sample mean converges to 1/density") {
    // 10^6 gaps: 1001 vehicles per call, 1000 calls.
    const TrafficScenario s(0.01, 100100.0);
    Rng rng(7);
    double sum = 0.0;
    std::size_t count = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto h = sample_headways(s, rng);
      sum += std::accumulate(h.gaps.begin(), h.gaps.end(), 0.0);
      count += h.gaps.size();
    }
    CHECK(count == 1000000);
    CHECK(std::abs(sum / count - 100.0) < 1.0);
  }

  TEST_CASE("empirical CDF matches the exponential law (KS < 0.01 at 1e5 samples)") {
    const double rho = 0.02;
    Rng rng(2024);
    // N = 100001 vehicles -> 1e5 gaps
    auto gaps = sample_headways(TrafficScenario(rho, 100001.0 / rho), rng).gaps;
    REQUIRE(gaps.size() == 100000);
    std::sort(gaps.begin(), gaps.end());
    double ks = 0.0;
    const double n = static_cast<double>(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      const double cdf = 1.0 - std::exp(-rho * gaps[i]);
      ks = std::max({ks, std::abs(cdf - i / n), std::abs((i + 1) / n - cdf)});
    }
    CHECK(ks < 0.01);
  }

  TEST_CASE("spacing matrix examples") {
    const auto s = spacing_matrix(HeadwayVector{{200.0, 300.0}});
    REQUIRE(s.size() == 3);
    const double expected[3][3] = {{0, 200, 500}, {200, 0, 300}, {500, 300, 0}};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(s(i, j) == expected[i][j]);
    }
    const auto two = spacing_matrix(HeadwayVector{{37.5}});
    CHECK(two(0, 1) == 37.5);
    CHECK(two(1, 0) == 37.5);
    CHECK(two(0, 0) == 0.0);
    CHECK_THROWS_AS(spacing_matrix(HeadwayVector{}), std::invalid_argument);
  }

  TEST_CASE("spacing matrix invariants on random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const TrafficScenario sc(0.005 + 0.0004 * trial, 10000.0);
      const auto h = sample_headways(sc, rng);
      const auto s = spacing_matrix(h);
      const std::size_t n = s.size();
      const double total = std::accumulate(h.gaps.begin(), h.gaps.end(), 0.0);
      CHECK(s(0, n - 1) == doctest::Approx(total).epsilon(1e-12));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(s(i, i) == 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
          REQUIRE(s(i, j) == s(j, i));
          if (j + 1 < n) REQUIRE(s(i, j + 1) > s(i, j));
          for (std::size_t k = j + 1; k < n; k += 7) {
            REQUIRE(std::abs(s(i, k) - (s(i, j) + s(j, k))) <= 1e-12 * s(i, k));
          }
        }
      }
    }
  }
}
