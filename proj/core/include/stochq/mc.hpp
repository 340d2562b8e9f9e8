//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <thread>
#include <vector>

#include "stochq/philox.hpp"

namespace stochq::mc {

/// Draw budget reserved per sample.  Sample i of an experiment reads its
/// randomness from counter offset i * kDrawStride of the experiment's
/// (seed, stream), so tallies are independent of the thread count and of
/// chunk boundaries.  No sampler in this library consumes more than five
/// draws per sample.
inline constexpr std::uint64_t kDrawStride = 8;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Tally samples into K cells.  `fn(index, rng)` must seek nothing itself;
/// it receives `rng` positioned at the sample's counter offset and returns
/// the cell index (< K) to increment.
template <std::size_t K, typename Fn>
std::array<std::uint64_t, K> tally_parallel(std::uint64_t samples, std::uint64_t seed,
                                            std::uint64_t stream, Fn&& fn,
                                            unsigned threads = 0) {
  const unsigned nthreads = resolve_threads(threads);
  std::vector<std::array<std::uint64_t, K>> partial(nthreads);
  auto worker = [&](unsigned t) {
    SeededRng rng(seed, stream);
    std::array<std::uint64_t, K> local{};
    const std::uint64_t lo = samples * t / nthreads;
    const std::uint64_t hi = samples * (t + 1) / nthreads;
    for (std::uint64_t i = lo; i < hi; ++i) {
      rng.seek(i * kDrawStride);
      ++local[fn(i, rng)];
    }
    partial[t] = local;
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
      pool.emplace_back(worker, t);
    }
  }
  std::array<std::uint64_t, K> total{};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < K; ++k) total[k] += p[k];
  }
  return total;
}

/// Count samples for which `pred` holds.
template <typename Fn>
std::uint64_t count_parallel(std::uint64_t samples, std::uint64_t seed,
                             std::uint64_t stream, Fn&& pred, unsigned threads = 0) {
  auto cells = tally_parallel<2>(
      samples, seed, stream,
      [&](std::uint64_t i, SeededRng& rng) -> std::size_t {
        return pred(i, rng) ? 1u : 0u;
      },
      threads);
  return cells[1];
}

}  // namespace stochq::mc
