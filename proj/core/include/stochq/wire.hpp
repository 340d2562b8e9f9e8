//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochq/geometry.hpp"

namespace stochq::wire {

/// Frame layout, little-endian throughout:
///   [kind: 1 byte][round: 8 bytes][payload length: 2 bytes][payload]
///
/// Payloads:
///   INIT     8 bytes, the shared seed
///   SETTING  24 bytes, a unit vector as 3 float64
///   BOB_BIT  1 byte, 0x00 = -1 / 0x01 = +1    (the one communicated bit)
///   OUTCOME  1 byte as above; a zero-length OUTCOME is a referee request
///   DONE     empty
///   ERROR    UTF-8 message (sent before closing on a protocol violation)
enum class Kind : std::uint8_t {
  init = 0x01,
  setting = 0x02,
  bob_bit = 0x03,
  outcome = 0x04,
  done = 0x05,
  error = 0x06,
};

const char* kind_name(Kind k);

inline constexpr std::size_t kHeaderSize = 11;
inline constexpr std::size_t kMaxPayload = 1024;

struct Frame {
  Kind kind = Kind::done;
  std::uint64_t round = 0;
  std::vector<std::uint8_t> payload;
};

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> encode(const Frame& frame);

struct Header {
  Kind kind;
  std::uint64_t round;
  std::uint16_t payload_len;
};

/// Throws WireError on an unknown kind or an oversized payload.
Header parse_header(std::span<const std::uint8_t, kHeaderSize> bytes);

Frame make_init(std::uint64_t seed);
Frame make_setting(const UnitVec3& v);
Frame make_bob_bit(std::uint64_t round, int r);
Frame make_outcome(std::uint64_t round, int s);
Frame make_outcome_request(std::uint64_t round);
Frame make_done();
Frame make_error(const std::string& message);

std::uint64_t parse_init(const Frame& frame);
UnitVec3 parse_setting(const Frame& frame);
/// Decodes a 1-byte BOB_BIT/OUTCOME payload to +1/-1.
int parse_bit(const Frame& frame);
std::string parse_error(const Frame& frame);

}  // namespace stochq::wire
