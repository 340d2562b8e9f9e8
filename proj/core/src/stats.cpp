//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochq::stats {

Estimate binomial_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials < 1) {
    throw std::invalid_argument("binomial_estimate: trials must be >= 1");
  }
  if (successes > trials) {
    throw std::invalid_argument("binomial_estimate: successes exceed trials");
  }
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return Estimate{p, se, trials};
}

double sigma_distance(const Estimate& est, double oracle) {
  const double diff = std::abs(est.mean - oracle);
  if (est.std_error > 0.0) {
    return diff / est.std_error;
  }
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

KsResult ks_uniformity(std::span<const double> samples, double a, double b) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_uniformity: empty sample");
  }
  if (!(a < b)) {
    throw std::invalid_argument("ks_uniformity: need a < b");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = std::clamp((sorted[i] - a) / (b - a), 0.0, 1.0);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(cdf - lo), std::abs(hi - cdf)});
  }
  KsResult r;
  r.statistic = d;
  r.samples = sorted.size();
  r.critical_1pct = 1.63 / std::sqrt(n);
  r.pass = d < r.critical_1pct;
  return r;
}

}  // namespace stochq::stats
