//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stochq/philox.hpp"
#include "stochq/stats.hpp"

using namespace stochq;
using stochq::stats::BinomialCounts;

TEST_SUITE("stats") {

TEST_CASE("binomial estimate formula") {
  const auto zero = stats::binomial_estimate(0, 100);
  CHECK(zero.mean == 0.0);
  CHECK(zero.std_error == 0.0);

  const auto half = stats::binomial_estimate(50, 100);
  CHECK(half.mean == doctest::Approx(0.5));
  CHECK(half.std_error == doctest::Approx(0.05));

  const auto big = stats::binomial_estimate(750'000, 1'000'000);
  CHECK(big.mean == doctest::Approx(0.75));
  CHECK(big.std_error == doctest::Approx(4.3301e-4).epsilon(1e-4));
  CHECK(big.std_error ==
        doctest::Approx(std::sqrt(big.mean * (1 - big.mean) / 1e6)).epsilon(1e-12));
}

TEST_CASE("binomial estimate rejects bad input") {
  CHECK_THROWS_AS(stats::binomial_estimate(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(stats::binomial_estimate(11, 10), std::invalid_argument);
}

TEST_CASE("sigma distance") {
  CHECK(stats::sigma_distance({0.5, 0.05, 100}, 0.5) == 0.0);
  CHECK(stats::sigma_distance({0.5, 0.05, 100}, 0.55) == doctest::Approx(1.0));
  CHECK(stats::sigma_distance({0.3, 0.0, 100}, 0.3) == 0.0);
  CHECK(stats::sigma_distance({0.3, 0.0, 100}, 0.4) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("estimates merge associatively") {
  const BinomialCounts a{10, 40};
  const BinomialCounts b{25, 60};
  const BinomialCounts c{5, 100};
  const auto pooled = stats::binomial_estimate(a + (b + c));
  const auto pooled2 = stats::binomial_estimate((a + b) + c);
  CHECK(pooled.mean == pooled2.mean);
  CHECK(pooled.std_error == pooled2.std_error);
  CHECK(pooled.mean == doctest::Approx(40.0 / 200.0));
}

TEST_CASE("KS statistic on an exact uniform grid is tiny") {
  std::vector<double> grid;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    grid.push_back((i + 0.5) / n);
  }
  const auto r = stats::ks_uniformity(grid, 0.0, 1.0);
  CHECK(r.statistic <= 1.0 / n + 1e-12);
  CHECK(r.pass);
}

TEST_CASE("KS rejects a point mass") {
  const std::vector<double> same(1000, 0.37);
  const auto r = stats::ks_uniformity(same, 0.0, 1.0);
  CHECK(r.statistic > 0.6);
  CHECK_FALSE(r.pass);
}

TEST_CASE("KS accepts uniform draws at n = 1e6") {
  std::vector<double> draws(1'000'000);
  SeededRng rng(21, 0);
  for (auto& d : draws) {
    d = rng.next_unit();
  }
  const auto r = stats::ks_uniformity(draws, 0.0, 1.0);
  CHECK(r.critical_1pct == doctest::Approx(1.63e-3).epsilon(1e-6));
  CHECK(r.pass);
}

TEST_CASE("KS input validation") {
  CHECK_THROWS_AS(stats::ks_uniformity(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(stats::ks_uniformity(std::vector<double>{0.1}, 1.0, 0.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
