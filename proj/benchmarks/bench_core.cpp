//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <benchmark/benchmark.h>

#include "stochq/analytic.hpp"
#include "stochq/bell.hpp"
#include "stochq/models.hpp"

using namespace stochq;

namespace {

void BM_PhiloxU64(benchmark::State& state) {
  SeededRng rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_u64());
  }
}
BENCHMARK(BM_PhiloxU64);

void BM_SampleSphere(benchmark::State& state) {
  SeededRng rng(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_uniform_sphere(rng));
  }
}
BENCHMARK(BM_SampleSphere);

void BM_Model1Transition(benchmark::State& state) {
  models::TransitionConfig cfg;
  cfg.evolution = Rotation::axis_angle(UnitVec3::x_axis(), kPi / 3);
  SeededRng rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(models::model1_transition(cfg, rng));
  }
}
BENCHMARK(BM_Model1Transition);

void BM_Model2Transition(benchmark::State& state) {
  models::TransitionConfig cfg;
  cfg.evolution = Rotation::axis_angle(UnitVec3::x_axis(), kPi / 3);
  SeededRng rng(4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(models::model2_transition(cfg, rng));
  }
}
BENCHMARK(BM_Model2Transition);

void BM_ReducedRound(benchmark::State& state) {
  const UnitVec3 v0 = UnitVec3::z_axis();
  const UnitVec3 v1 = UnitVec3::from_spherical(kPi / 4, 0.0);
  std::uint64_t round = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::play_round(bell::Variant::reduced, 5, round++, v0, v1));
  }
}
BENCHMARK(BM_ReducedRound);

void BM_RunProtocol(benchmark::State& state) {
  const UnitVec3 v0 = UnitVec3::z_axis();
  const UnitVec3 v1 = UnitVec3::from_spherical(kPi / 4, 0.0);
  const auto rounds = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bell::run_protocol(bell::Variant::reduced, v0, v1, rounds, 6));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rounds));
}
BENCHMARK(BM_RunProtocol)->Arg(100'000);

void BM_TransitionIntegral(benchmark::State& state) {
  const UnitVec3 n = UnitVec3::z_axis();
  const UnitVec3 v = UnitVec3::from_spherical(kPi / 3, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::ks_transition_integral(+1, +1, n, v));
  }
}
BENCHMARK(BM_TransitionIntegral);

}  // namespace

BENCHMARK_MAIN();
