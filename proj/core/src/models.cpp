//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stochq/analytic.hpp"
#include "stochq/mc.hpp"

namespace stochq::models {

namespace {

void require_pm(int s, const char* what) {
  if (s != +1 && s != -1) {
    throw std::invalid_argument(std::string(what) + " must be +1 or -1");
  }
}

}  // namespace

int model1_transition(const TransitionConfig& cfg, SeededRng& rng) noexcept {
  const UnitVec3 x = sample_uniform_sphere(rng);  // noise value at t0
  const double xi0 = cfg.n.dot(x);
  const double xi1 = cfg.n.dot(cfg.evolution.apply(x));
  return cfg.s0 * sign_pm(xi0 * xi1);
}

double model1_prob(int s0, int s1, const UnitVec3& n, const UnitVec3& v) {
  require_pm(s0, "s0");
  require_pm(s1, "s1");
  const double d = n.dot(v);
  if (std::abs(d) > 1.0 + kUnitTolerance) {
    throw std::domain_error("model1_prob: |n.v| exceeds 1 beyond tolerance");
  }
  return 1.0 - std::acos(std::clamp(s1 * s0 * d, -1.0, 1.0)) / kPi;
}

int measure_update_r(const noise::NoisePair& pair, const UnitVec3& n) noexcept {
  const double p = n.dot(pair.y_plus);
  const double m = n.dot(pair.y_minus);
  return sign_pm(p * p - m * m);
}

QubitClassicalState model2_transition(const TransitionConfig& cfg, SeededRng& rng) noexcept {
  const noise::NoisePair pair = noise::sample_noise_pair(rng);  // values at t0
  const int r0 = measure_update_r(pair, cfg.n);
  const UnitVec3& y = pair.labeled(r0);
  const double xi0 = cfg.n.dot(y);
  const double xi1 = cfg.n.dot(cfg.evolution.apply(y));
  return QubitClassicalState{cfg.s0 * sign_pm(xi0 * xi1), r0};
}

std::vector<TrajectoryPoint> trace_trajectory(const TransitionConfig& cfg,
                                              const noise::EvolutionFamily& evolution,
                                              const std::vector<double>& grid,
                                              SeededRng& rng) {
  if (grid.empty()) {
    throw std::invalid_argument("trace_trajectory: empty grid");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("trace_trajectory: grid must be strictly increasing");
    }
  }
  const noise::NoisePair pair = noise::sample_noise_pair(rng);
  const int r0 = measure_update_r(pair, cfg.n);

  std::vector<TrajectoryPoint> out;
  out.reserve(grid.size());
  int s = cfg.s0;
  double prev_xi = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const noise::NoisePair at_t = noise::propagate(pair, evolution(grid[k]));
    const double xi_p = cfg.n.dot(at_t.y_plus);
    const double xi_m = cfg.n.dot(at_t.y_minus);
    const double xi_r = r0 > 0 ? xi_p : xi_m;
    if (k > 0 && sign_pm(prev_xi * xi_r) < 0) {
      s = -s;
    }
    prev_xi = xi_r;
    out.push_back(TrajectoryPoint{grid[k], s, r0, xi_p, xi_m});
  }
  return out;
}

std::vector<TrajectoryPoint> trace_trajectory(const TransitionConfig& cfg,
                                              const std::vector<double>& grid,
                                              SeededRng& rng) {
  if (grid.empty()) {
    throw std::invalid_argument("trace_trajectory: empty grid");
  }
  const double t0 = grid.front();
  const double span = grid.back() - t0;
  const auto family = [&cfg, t0, span](double t) {
    return cfg.evolution.fractional(span > 0.0 ? (t - t0) / span : 0.0);
  };
  return trace_trajectory(cfg, family, grid, rng);
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory) {
  std::ostringstream os;
  os.precision(17);
  os << "time,xi_plus,xi_minus,s,r\n";
  for (const auto& p : trajectory) {
    os << p.t << ',' << p.xi_plus << ',' << p.xi_minus << ',' << p.s << ',' << p.r << '\n';
  }
  return os.str();
}

TransitionReport run_transition(Model model, const TransitionConfig& cfg, unsigned threads) {
  if (cfg.samples < 1) {
    throw std::invalid_argument("run_transition: samples must be >= 1");
  }
  require_pm(cfg.s0, "s0");
  const std::uint64_t same = mc::count_parallel(
      cfg.samples, cfg.seed, /*stream=*/0,
      [&](std::uint64_t, SeededRng& rng) {
        const int s1 = model == Model::one ? model1_transition(cfg, rng)
                                           : model2_transition(cfg, rng).s;
        return s1 == cfg.s0;
      },
      threads);

  TransitionReport report;
  report.model = model;
  report.config = cfg;
  report.empirical_p = stats::binomial_estimate(same, cfg.samples);
  const UnitVec3 v = cfg.evolution.apply(cfg.n);
  report.oracle_p = model == Model::one ? model1_prob(cfg.s0, cfg.s0, cfg.n, v)
                                        : analytic::pq(cfg.s0, cfg.s0, cfg.n, v);
  report.sigma_distance = stats::sigma_distance(report.empirical_p, report.oracle_p);
  return report;
}

std::string transition_report_json(const TransitionReport& report) {
  const auto& cfg = report.config;
  const AxisAngle aa = cfg.evolution.to_axis_angle();
  nlohmann::ordered_json j;
  j["config"] = {
      {"model", static_cast<int>(report.model)},
      {"n", {cfg.n.x(), cfg.n.y(), cfg.n.z()}},
      {"axis", {aa.axis.x(), aa.axis.y(), aa.axis.z()}},
      {"theta", aa.angle},
      {"s0", cfg.s0},
      {"samples", cfg.samples},
      {"seed", cfg.seed},
  };
  j["empirical_p"] = report.empirical_p.mean;
  j["oracle_p"] = report.oracle_p;
  j["stderr"] = report.empirical_p.std_error;
  j["sigma_distance"] = report.sigma_distance;
  j["samples"] = report.empirical_p.samples;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

}  // namespace stochq::models
