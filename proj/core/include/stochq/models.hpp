//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochq/geometry.hpp"
#include "stochq/noise.hpp"
#include "stochq/stats.hpp"

namespace stochq::models {

/// The four classical states: the measurable bit s and the invasively
/// updated bit r.  Model 1 has no r.
struct QubitClassicalState {
  int s = +1;
  int r = +1;
};

/// A two-measurement experiment: measure s0 along n at t0, evolve by R,
/// measure again along n at t1.
struct TransitionConfig {
  UnitVec3 n = UnitVec3::z_axis();
  Rotation evolution = Rotation::identity();  // R(t0, t1)
  int s0 = +1;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

enum class Model { one = 1, two = 2 };

/// One Model-1 draw: the noninvasive two-state rule.  The outcome flips iff
/// the projection of the noise vector onto n changes sign across the
/// interval.  Uses at most 2 draws.
int model1_transition(const TransitionConfig& cfg, SeededRng& rng) noexcept;

/// Model-1 transition probability: 1 - arccos(s1*s0*n.v)/pi with v = R n.
/// Throws std::domain_error if |n.v| exceeds 1 beyond tolerance.
double model1_prob(int s0, int s1, const UnitVec3& n, const UnitVec3& v);

/// Measurement update of the invasive bit: the sign of the squared
/// projection difference of the two noise vectors.  sign(0) = +1.
int measure_update_r(const noise::NoisePair& pair, const UnitVec3& n) noexcept;

/// One Model-2 draw: r is set at the first measurement, then s evolves by
/// sign changes of the r-selected projection.  Uses exactly 4 draws.
QubitClassicalState model2_transition(const TransitionConfig& cfg, SeededRng& rng) noexcept;

struct TrajectoryPoint {
  double t = 0.0;
  int s = +1;
  int r = +1;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
};

/// Model-2 sample path on a grid.  r stays at its t0 value; s flips between
/// consecutive grid points exactly when the selected projection changes
/// sign across them.  An even number of crossings inside one step is
/// invisible, so grids should resolve the evolution.  The evolution family
/// maps grid time t to R(t0, t).  Throws std::invalid_argument on an empty
/// or non-increasing grid.
std::vector<TrajectoryPoint> trace_trajectory(const TransitionConfig& cfg,
                                              const noise::EvolutionFamily& evolution,
                                              const std::vector<double>& grid,
                                              SeededRng& rng);

/// Same, interpolating cfg.evolution along its axis at uniform angular
/// velocity.  A rotation matrix does not record winding, so this always
/// takes the short path; pass an explicit family for drives past half a
/// turn.
std::vector<TrajectoryPoint> trace_trajectory(const TransitionConfig& cfg,
                                              const std::vector<double>& grid,
                                              SeededRng& rng);

/// CSV with header: time,xi_plus,xi_minus,s,r
std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory);

/// Monte Carlo estimate of P(s1 = cfg.s0) with its analytic oracle.
struct TransitionReport {
  Model model = Model::two;
  TransitionConfig config;
  stats::Estimate empirical_p;  // P(s1 = s0)
  double oracle_p = 0.0;
  double sigma_distance = 0.0;
};

/// Run cfg.samples transitions in parallel; deterministic for a fixed
/// (seed, samples) regardless of thread count.
TransitionReport run_transition(Model model, const TransitionConfig& cfg,
                                unsigned threads = 0);

/// JSON record {config, empirical_p, oracle_p, stderr, sigma_distance,
/// samples, seed}.
std::string transition_report_json(const TransitionReport& report);

}  // namespace stochq::models
