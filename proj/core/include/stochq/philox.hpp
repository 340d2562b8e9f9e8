//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace stochq {

/// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// The 128-bit counter is split into a 64-bit draw counter and a 64-bit
/// stream id; the 64-bit key is the user seed.  Every (seed, stream,
/// counter) triple maps to the same output words on every platform, so
/// streams can be handed to parallel workers and any draw can be reached
/// in O(1) with seek().
namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Counter round(const Counter& c, const Key& k) noexcept {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

/// Ten-round block function.
inline Counter block(Counter c, Key k) noexcept {
  c = round(c, k);
  for (int i = 1; i < 10; ++i) {
    k[0] += kWeyl0;
    k[1] += kWeyl1;
    c = round(c, k);
  }
  return c;
}

}  // namespace philox

/// Seekable RNG over a (seed, stream) pair.  Each Philox block yields two
/// 64-bit draws; position() counts draws, not blocks.  Instances are
/// single-owner; share work across threads by giving each worker its own
/// stream or disjoint counter ranges.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() noexcept {
    const std::uint64_t block_index = index_ >> 1;
    if (block_index != cached_block_) {
      refill(block_index);
    }
    const unsigned w = 2 * static_cast<unsigned>(index_ & 1);
    ++index_;
    return static_cast<std::uint64_t>(words_[w]) |
           (static_cast<std::uint64_t>(words_[w + 1]) << 32);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// +1 or -1 with equal probability.
  int next_sign() noexcept { return (next_u64() & 1u) ? +1 : -1; }

  /// Jump to an absolute draw index within this stream.
  void seek(std::uint64_t draw_index) noexcept { index_ = draw_index; }

  std::uint64_t position() const noexcept { return index_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill(std::uint64_t block_index) noexcept {
    const philox::Counter ctr = {
        static_cast<std::uint32_t>(block_index),
        static_cast<std::uint32_t>(block_index >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    const philox::Key key = {static_cast<std::uint32_t>(seed_),
                             static_cast<std::uint32_t>(seed_ >> 32)};
    words_ = philox::block(ctr, key);
    cached_block_ = block_index;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
  std::uint64_t cached_block_ = ~std::uint64_t{0};
  philox::Counter words_ = {0, 0, 0, 0};
};

}  // namespace stochq
