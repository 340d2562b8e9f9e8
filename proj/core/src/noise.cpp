//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/noise.hpp"

#include <stdexcept>

namespace stochq::noise {

NoisePair sample_noise_pair(SeededRng& rng) noexcept {
  const UnitVec3 plus = sample_uniform_sphere(rng);
  const UnitVec3 minus = sample_uniform_sphere(rng);
  return NoisePair{plus, minus};
}

NoisePair propagate(const NoisePair& pair, const Rotation& r) noexcept {
  return NoisePair{r.apply(pair.y_plus), r.apply(pair.y_minus)};
}

NoiseTrace trace_projections(const NoisePair& pair, const EvolutionFamily& evolution,
                             const UnitVec3& n, const std::vector<double>& grid) {
  if (grid.empty()) {
    throw std::invalid_argument("trace_projections: empty grid");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("trace_projections: grid must be strictly increasing");
    }
  }
  NoiseTrace trace;
  trace.times = grid;
  trace.xi_plus.reserve(grid.size());
  trace.xi_minus.reserve(grid.size());
  for (const double t : grid) {
    const NoisePair at_t = propagate(pair, evolution(t));
    trace.xi_plus.push_back(n.dot(at_t.y_plus));
    trace.xi_minus.push_back(n.dot(at_t.y_minus));
  }
  return trace;
}

}  // namespace stochq::noise
