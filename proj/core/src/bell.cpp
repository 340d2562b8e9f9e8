//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/bell.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "stochq/mc.hpp"

namespace stochq::bell {

SharedVariable shared_for_round(std::uint64_t seed, std::uint64_t round) {
  SeededRng rng(seed, round);
  return SharedVariable{noise::sample_noise_pair(rng)};
}

namespace {

int squared_projection_sign(const SharedVariable& y, const UnitVec3& v) {
  const double p = v.dot(y.pair.y_plus);
  const double m = v.dot(y.pair.y_minus);
  return sign_pm(p * p - m * m);
}

}  // namespace

BobFullResult bob_full(const SharedVariable& y, const UnitVec3& v0, const UnitVec3& n,
                       SeededRng& rng) {
  BobFullResult out;
  out.r = squared_projection_sign(y, v0);
  out.s0 = rng.next_sign();
  const UnitVec3& yr = y.labeled(out.r);
  out.s = out.s0 * sign_pm(v0.dot(yr)) * sign_pm(n.dot(yr));
  return out;
}

int alice_full(const SharedVariable& y, int s, int r, const UnitVec3& v1,
               const UnitVec3& n) {
  const UnitVec3& yr = y.labeled(r);
  return s * sign_pm(n.dot(yr)) * sign_pm(v1.dot(yr));
}

BobReducedResult bob_reduced(const SharedVariable& y, const UnitVec3& v0) {
  BobReducedResult out;
  out.r = squared_projection_sign(y, v0);
  out.s0 = sign_pm(v0.dot(y.labeled(out.r)));
  return out;
}

int alice_reduced(const SharedVariable& y, int r, const UnitVec3& v1) {
  return sign_pm(v1.dot(y.labeled(r)));
}

RoundOutcome play_round(Variant variant, std::uint64_t seed, std::uint64_t round,
                        const UnitVec3& v0, const UnitVec3& v1, const UnitVec3& n) {
  SeededRng rng(seed, round);
  const SharedVariable y{noise::sample_noise_pair(rng)};
  RoundOutcome out;
  if (variant == Variant::full) {
    // rng continues past the shared draws: Bob's coin is draw 4.
    const BobFullResult bob = bob_full(y, v0, n, rng);
    out.r = bob.r;
    out.s0 = bob.s0;
    out.s1 = alice_full(y, bob.s, bob.r, v1, n);
  } else {
    const BobReducedResult bob = bob_reduced(y, v0);
    out.r = bob.r;
    out.s0 = bob.s0;
    out.s1 = alice_reduced(y, bob.r, v1);
  }
  return out;
}

double JointCounts::correlator() const {
  if (rounds == 0) return 0.0;
  const double agree = static_cast<double>(cell(+1, +1) + cell(-1, -1));
  const double disagree = static_cast<double>(cell(+1, -1) + cell(-1, +1));
  return (agree - disagree) / static_cast<double>(rounds);
}

JointCounts run_protocol(Variant variant, const UnitVec3& v0, const UnitVec3& v1,
                         std::uint64_t rounds, std::uint64_t seed, const UnitVec3& n,
                         unsigned threads) {
  JointCounts counts;
  if (rounds == 0) {
    return counts;
  }
  // Rounds are indexed by stream, not by counter offset, so the networked
  // harness can reproduce any single round in isolation.
  const auto cells = mc::tally_parallel<4>(
      rounds, seed, /*stream=*/0,
      [&](std::uint64_t round, SeededRng&) {
        const RoundOutcome o = play_round(variant, seed, round, v0, v1, n);
        return JointCounts::index(o.s0, o.s1);
      },
      threads);
  counts.cells = cells;
  counts.rounds = rounds;
  return counts;
}

void append_round_log(std::ostream& os, std::uint64_t round, const UnitVec3& v0,
                      const UnitVec3& v1, const RoundOutcome& outcome) {
  nlohmann::ordered_json j;
  j["round"] = round;
  j["v0"] = {v0.x(), v0.y(), v0.z()};
  j["v1"] = {v1.x(), v1.y(), v1.z()};
  j["r"] = outcome.r;
  j["s0"] = outcome.s0;
  j["s1"] = outcome.s1;
  os << j.dump() << '\n';
}

}  // namespace stochq::bell
