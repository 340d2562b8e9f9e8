//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochq/mc.hpp"
#include "stochq/models.hpp"
#include "stochq/stats.hpp"

namespace stochq::ineq {

double quantum_correlator(const UnitVec3& n, const Rotation& r) {
  return n.dot(r.apply(n));
}

double model1_correlator(const UnitVec3& n, const Rotation& r) {
  const double d = std::clamp(n.dot(r.apply(n)), -1.0, 1.0);
  return 1.0 - 2.0 * std::acos(d) / kPi;
}

CorrelatorEstimate two_time_correlator(CorrelatorModel model, const UnitVec3& n,
                                       const Rotation& r, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads) {
  if (model == CorrelatorModel::quantum_oracle) {
    return CorrelatorEstimate{quantum_correlator(n, r), 0.0, 0};
  }
  if (samples < 1) {
    throw std::invalid_argument("two_time_correlator: samples must be >= 1");
  }
  const std::uint64_t aligned = mc::count_parallel(
      samples, seed, /*stream=*/0,
      [&](std::uint64_t, SeededRng& rng) {
        models::TransitionConfig cfg;
        cfg.n = n;
        cfg.evolution = r;
        cfg.s0 = rng.next_sign();
        const int s1 = model == CorrelatorModel::model1
                           ? models::model1_transition(cfg, rng)
                           : models::model2_transition(cfg, rng).s;
        return s1 == cfg.s0;
      },
      threads);
  const stats::Estimate p = stats::binomial_estimate(aligned, samples);
  return CorrelatorEstimate{2.0 * p.mean - 1.0, 2.0 * p.std_error, samples};
}

K3Result lg_k3(CorrelatorModel model, const UnitVec3& n, const Rotation& step,
               std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  const Rotation two_steps = step * step;
  K3Result out;
  if (model == CorrelatorModel::quantum_oracle) {
    out.c01 = {quantum_correlator(n, step), 0.0, 0};
    out.c12 = out.c01;
    out.c02 = {quantum_correlator(n, two_steps), 0.0, 0};
  } else {
    // Distinct seeds per pairwise experiment keep them independent.
    out.c01 = two_time_correlator(model, n, step, samples, seed, threads);
    out.c12 = two_time_correlator(model, n, step, samples, seed + 1, threads);
    out.c02 = two_time_correlator(model, n, two_steps, samples, seed + 2, threads);
  }
  out.k3 = out.c01.mean + out.c12.mean - out.c02.mean;
  out.std_error = std::sqrt(out.c01.std_error * out.c01.std_error +
                            out.c12.std_error * out.c12.std_error +
                            out.c02.std_error * out.c02.std_error);
  return out;
}

ChshResult chsh(const CorrelatorEstimate& e_ab, const CorrelatorEstimate& e_ab2,
                const CorrelatorEstimate& e_a2b, const CorrelatorEstimate& e_a2b2) {
  ChshResult out;
  out.s = e_ab.mean + e_ab2.mean + e_a2b.mean - e_a2b2.mean;
  out.std_error =
      std::sqrt(e_ab.std_error * e_ab.std_error + e_ab2.std_error * e_ab2.std_error +
                e_a2b.std_error * e_a2b.std_error + e_a2b2.std_error * e_a2b2.std_error);
  return out;
}

}  // namespace stochq::ineq
