//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "stochq/geometry.hpp"
#include "stochq/noise.hpp"

namespace stochq::bell {

/// The shared randomness of one protocol round: the noise pair at the
/// common reference time.  Both parties derive it from the shared seed and
/// the round counter, so nothing heavier than the seed crosses the wire.
struct SharedVariable {
  noise::NoisePair pair;

  const UnitVec3& labeled(int r) const { return pair.labeled(r); }
};

/// What Bob sends: always the invasive bit r, plus the s bit only in the
/// full (two-bit) variant.
struct BobMessage {
  int r = +1;
  std::optional<int> s;

  int bits() const { return s.has_value() ? 2 : 1; }
};

enum class Variant { full, reduced };

/// Deterministic shared variable for a round: stream = round index of the
/// shared seed.
SharedVariable shared_for_round(std::uint64_t seed, std::uint64_t round);

struct BobFullResult {
  int s0 = +1;
  int s = +1;
  int r = +1;
};

/// Full-protocol Bob: r from the squared-projection rule, s0 a fair coin,
/// s the unique value aligning the two sign factors.  n is the free
/// parameter of the full variant.
BobFullResult bob_full(const SharedVariable& y, const UnitVec3& v0, const UnitVec3& n,
                       SeededRng& rng);

/// Full-protocol Alice: deterministic given (s, r) and the shared variable.
int alice_full(const SharedVariable& y, int s, int r, const UnitVec3& v1,
               const UnitVec3& n);

struct BobReducedResult {
  int s0 = +1;
  int r = +1;
};

/// Reduced protocol: one communicated bit, outcomes are deterministic
/// functions of the shared variable and the local setting.  n does not
/// appear.
BobReducedResult bob_reduced(const SharedVariable& y, const UnitVec3& v0);
int alice_reduced(const SharedVariable& y, int r, const UnitVec3& v1);

struct RoundOutcome {
  int r = +1;
  int s0 = +1;
  int s1 = +1;
};

/// Play one round end to end (in process).
RoundOutcome play_round(Variant variant, std::uint64_t seed, std::uint64_t round,
                        const UnitVec3& v0, const UnitVec3& v1,
                        const UnitVec3& n = UnitVec3::z_axis());

/// Joint (s0, s1) counts over a session.
struct JointCounts {
  std::array<std::uint64_t, 4> cells{};  // index: (s0>0)*2 + (s1>0)
  std::uint64_t rounds = 0;

  static std::size_t index(int s0, int s1) {
    return (s0 > 0 ? 2u : 0u) + (s1 > 0 ? 1u : 0u);
  }
  std::uint64_t cell(int s0, int s1) const { return cells[index(s0, s1)]; }
  void add(int s0, int s1) {
    ++cells[index(s0, s1)];
    ++rounds;
  }
  /// Empirical correlator <s0 s1>.
  double correlator() const;
};

/// Run the protocol for `rounds` rounds; deterministic for fixed seed
/// regardless of thread count.
JointCounts run_protocol(Variant variant, const UnitVec3& v0, const UnitVec3& v1,
                         std::uint64_t rounds, std::uint64_t seed,
                         const UnitVec3& n = UnitVec3::z_axis(), unsigned threads = 0);

/// One JSON line per round: {"round":..,"v0":..,"v1":..,"r":..,"s0":..,"s1":..}
void append_round_log(std::ostream& os, std::uint64_t round, const UnitVec3& v0,
                      const UnitVec3& v1, const RoundOutcome& outcome);

}  // namespace stochq::bell
