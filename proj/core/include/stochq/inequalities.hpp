//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>

#include "stochq/geometry.hpp"

namespace stochq::ineq {

/// Two-time correlator estimate C = <s0 s1> with maximally mixed
/// preparation.  Oracle evaluations carry std_error = 0.
struct CorrelatorEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

enum class CorrelatorModel {
  model1,         // Monte Carlo, noninvasive 2-state model
  model2,         // Monte Carlo, invasive 4-state model
  quantum_oracle  // closed form
};

/// Exact quantum correlator: n . (R n).
double quantum_correlator(const UnitVec3& n, const Rotation& r);

/// Exact Model-1 correlator: 1 - 2 arccos(n . R n) / pi.
double model1_correlator(const UnitVec3& n, const Rotation& r);

/// C = sum_{s0,s1} s0 s1 P(s1|s0) rho(s0) with rho(s0) = 1/2; Monte Carlo
/// variants draw s0 uniformly, then one model transition.
CorrelatorEstimate two_time_correlator(CorrelatorModel model, const UnitVec3& n,
                                       const Rotation& r, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 0);

/// K3 = C(t0,t1) + C(t1,t2) - C(t0,t2) for equal per-interval rotations,
/// each correlator from an independent pairwise experiment.  Noninvasive
/// bound: K3 <= 1.
struct K3Result {
  double k3 = 0.0;
  double std_error = 0.0;
  CorrelatorEstimate c01, c12, c02;
};

K3Result lg_k3(CorrelatorModel model, const UnitVec3& n, const Rotation& step,
               std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

/// CHSH combination S = E(a,b) + E(a,b') + E(a',b) - E(a',b').
struct ChshResult {
  double s = 0.0;
  double std_error = 0.0;
};

ChshResult chsh(const CorrelatorEstimate& e_ab, const CorrelatorEstimate& e_ab2,
                const CorrelatorEstimate& e_a2b, const CorrelatorEstimate& e_a2b2);

}  // namespace stochq::ineq
