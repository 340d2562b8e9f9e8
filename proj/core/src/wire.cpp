//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/wire.hpp"

#include <bit>
#include <cstring>

namespace stochq::wire {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return v;
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

double get_f64(const std::uint8_t* p) { return std::bit_cast<double>(get_u64(p)); }

void expect_payload(const Frame& f, std::size_t len, const char* what) {
  if (f.payload.size() != len) {
    throw WireError(std::string(what) + ": expected " + std::to_string(len) +
                    "-byte payload, got " + std::to_string(f.payload.size()));
  }
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::init: return "INIT";
    case Kind::setting: return "SETTING";
    case Kind::bob_bit: return "BOB_BIT";
    case Kind::outcome: return "OUTCOME";
    case Kind::done: return "DONE";
    case Kind::error: return "ERROR";
  }
  return "UNKNOWN";
}

std::vector<std::uint8_t> encode(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) {
    throw WireError("encode: payload too large");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + frame.payload.size());
  out.push_back(static_cast<std::uint8_t>(frame.kind));
  put_u64(out, frame.round);
  put_u16(out, static_cast<std::uint16_t>(frame.payload.size()));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

Header parse_header(std::span<const std::uint8_t, kHeaderSize> bytes) {
  const std::uint8_t raw = bytes[0];
  if (raw < static_cast<std::uint8_t>(Kind::init) ||
      raw > static_cast<std::uint8_t>(Kind::error)) {
    throw WireError("malformed frame: unknown kind 0x" + std::to_string(raw));
  }
  Header h;
  h.kind = static_cast<Kind>(raw);
  h.round = get_u64(bytes.data() + 1);
  h.payload_len = static_cast<std::uint16_t>(bytes[9] | (bytes[10] << 8));
  if (h.payload_len > kMaxPayload) {
    throw WireError("malformed frame: payload length exceeds limit");
  }
  return h;
}

Frame make_init(std::uint64_t seed) {
  Frame f{Kind::init, 0, {}};
  put_u64(f.payload, seed);
  return f;
}

Frame make_setting(const UnitVec3& v) {
  Frame f{Kind::setting, 0, {}};
  put_f64(f.payload, v.x());
  put_f64(f.payload, v.y());
  put_f64(f.payload, v.z());
  return f;
}

Frame make_bob_bit(std::uint64_t round, int r) {
  return Frame{Kind::bob_bit, round, {static_cast<std::uint8_t>(r > 0 ? 0x01 : 0x00)}};
}

Frame make_outcome(std::uint64_t round, int s) {
  return Frame{Kind::outcome, round, {static_cast<std::uint8_t>(s > 0 ? 0x01 : 0x00)}};
}

Frame make_outcome_request(std::uint64_t round) {
  return Frame{Kind::outcome, round, {}};
}

Frame make_done() { return Frame{Kind::done, 0, {}}; }

Frame make_error(const std::string& message) {
  Frame f{Kind::error, 0, {}};
  f.payload.assign(message.begin(), message.end());
  if (f.payload.size() > kMaxPayload) {
    f.payload.resize(kMaxPayload);
  }
  return f;
}

std::uint64_t parse_init(const Frame& frame) {
  expect_payload(frame, 8, "INIT");
  return get_u64(frame.payload.data());
}

UnitVec3 parse_setting(const Frame& frame) {
  expect_payload(frame, 24, "SETTING");
  const double x = get_f64(frame.payload.data());
  const double y = get_f64(frame.payload.data() + 8);
  const double z = get_f64(frame.payload.data() + 16);
  try {
    return UnitVec3::from_components(x, y, z);
  } catch (const std::invalid_argument& e) {
    throw WireError(std::string("SETTING: ") + e.what());
  }
}

int parse_bit(const Frame& frame) {
  expect_payload(frame, 1, kind_name(frame.kind));
  const std::uint8_t b = frame.payload[0];
  if (b > 0x01) {
    throw WireError("bit payload must be 0x00 or 0x01");
  }
  return b == 0x01 ? +1 : -1;
}

std::string parse_error(const Frame& frame) {
  return std::string(frame.payload.begin(), frame.payload.end());
}

}  // namespace stochq::wire
