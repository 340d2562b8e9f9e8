//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "stochq/geometry.hpp"

namespace stochq::noise {

/// The two independent noise vectors at the reference time.  The value at
/// any other time is recovered by rotating with the evolution, never by
/// fresh randomness.
struct NoisePair {
  UnitVec3 y_plus;   // labeled +1
  UnitVec3 y_minus;  // labeled -1

  const UnitVec3& labeled(int r) const { return r > 0 ? y_plus : y_minus; }
};

/// Projections xi_r(t) = n . x_r(t) on a time grid.  Presentation only; no
/// model logic reads one of these.
struct NoiseTrace {
  std::vector<double> times;
  std::vector<double> xi_plus;
  std::vector<double> xi_minus;
};

/// Evolution family t -> R(t_ref, t).
using EvolutionFamily = std::function<Rotation(double)>;

/// Two independent uniform sphere points; exactly four draws.
NoisePair sample_noise_pair(SeededRng& rng) noexcept;

/// Rotate both members; deterministic.
NoisePair propagate(const NoisePair& pair, const Rotation& r) noexcept;

/// Evaluate xi_r(t_k) = n . (R(t_ref, t_k) y_r) on a strictly increasing
/// grid.  Throws std::invalid_argument on an empty or non-increasing grid.
NoiseTrace trace_projections(const NoisePair& pair, const EvolutionFamily& evolution,
                             const UnitVec3& n, const std::vector<double>& grid);

}  // namespace stochq::noise
