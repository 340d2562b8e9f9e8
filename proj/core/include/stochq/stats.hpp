//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stochq::stats {

/// A Monte Carlo estimate.  For binomial estimates the standard error is
/// sqrt(p(1-p)/N) by construction.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Mergeable success/trial counter; merging then estimating equals
/// estimating the pooled counts.
struct BinomialCounts {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  BinomialCounts& operator+=(const BinomialCounts& o) noexcept {
    successes += o.successes;
    trials += o.trials;
    return *this;
  }
  friend BinomialCounts operator+(BinomialCounts a, const BinomialCounts& b) noexcept {
    a += b;
    return a;
  }
};

/// Throws std::invalid_argument unless 0 <= successes <= trials, trials >= 1.
Estimate binomial_estimate(std::uint64_t successes, std::uint64_t trials);

inline Estimate binomial_estimate(const BinomialCounts& c) {
  return binomial_estimate(c.successes, c.trials);
}

/// |mean - oracle| in units of the standard error.  A degenerate estimate
/// (std_error == 0) is at distance 0 when exact and +inf otherwise.
double sigma_distance(const Estimate& est, double oracle);

struct KsResult {
  double statistic = 0.0;
  double critical_1pct = 0.0;  // 1.63 / sqrt(N), asymptotic
  std::uint64_t samples = 0;
  bool pass = false;
};

/// One-sample Kolmogorov-Smirnov test of uniformity on [a, b] at the 1%
/// level.  Throws std::invalid_argument on empty input or a >= b.
KsResult ks_uniformity(std::span<const double> samples, double a = 0.0, double b = 1.0);

}  // namespace stochq::stats
