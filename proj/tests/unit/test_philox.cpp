//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <doctest.h>

#include <vector>

#include "stochq/philox.hpp"

using namespace stochq;

TEST_SUITE("philox") {

// Reference vectors for the 4x32-10 configuration (Random123 kat_vectors).
TEST_CASE("known answers") {
  using philox::Counter;
  using philox::Key;

  const Counter zero = philox::block({0u, 0u, 0u, 0u}, Key{0u, 0u});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const Counter ones = philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     Key{0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const Counter pi = philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                   Key{0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("equal (seed, stream) reproduces the sequence bitwise") {
  SeededRng a(0x1234, 7);
  SeededRng b(0x1234, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("seek jumps to the absolute draw index") {
  SeededRng reference(42, 3);
  std::vector<std::uint64_t> draws;
  for (int i = 0; i < 17; ++i) {
    draws.push_back(reference.next_u64());
  }
  SeededRng seeker(42, 3);
  for (int i = 16; i >= 0; --i) {
    seeker.seek(static_cast<std::uint64_t>(i));
    CHECK(seeker.next_u64() == draws[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("streams and seeds decorrelate the outputs") {
  SeededRng a(42, 0);
  SeededRng b(42, 1);
  SeededRng c(43, 0);
  int equal_ab = 0;
  int equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    equal_ab += va == b.next_u64();
    equal_ac += va == c.next_u64();
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("next_unit stays in [0, 1)") {
  SeededRng rng(99, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

}  // TEST_SUITE
