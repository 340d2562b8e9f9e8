//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <doctest.h>

#include <thread>

#include "stochq/analytic.hpp"
#include "stochq/net.hpp"
#include "stochq/stats.hpp"

using namespace stochq;

namespace {

struct PartyPair {
  net::TcpListener bob;
  net::TcpListener alice;
  std::jthread bob_thread;
  std::jthread alice_thread;

  PartyPair(int sessions = 1)
      : bob(net::TcpListener::bind("127.0.0.1", 0)),
        alice(net::TcpListener::bind("127.0.0.1", 0)),
        bob_thread([this, sessions] { net::bob_service(bob, sessions); }),
        alice_thread([this, sessions] { net::alice_service(alice, sessions); }) {}

  net::Endpoint bob_ep() const { return {"127.0.0.1", bob.port()}; }
  net::Endpoint alice_ep() const { return {"127.0.0.1", alice.port()}; }
};

}  // namespace

TEST_SUITE("net") {

TEST_CASE("endpoint parsing") {
  const auto ep = net::parse_endpoint("localhost:9001");
  CHECK(ep.host == "localhost");
  CHECK(ep.port == 9001);
  CHECK_THROWS_AS(net::parse_endpoint("nocolon"), net::NetError);
  CHECK_THROWS_AS(net::parse_endpoint("host:"), net::NetError);
  CHECK_THROWS_AS(net::parse_endpoint("host:99999"), net::NetError);
}

TEST_CASE("loopback session reproduces the in-process protocol round for round") {
  PartyPair parties;
  const UnitVec3 v0 = UnitVec3::from_spherical(0.7, 0.3);
  const UnitVec3 v1 = UnitVec3::from_spherical(1.9, -0.8);
  constexpr std::uint64_t rounds = 2'000;
  constexpr std::uint64_t seed = 91;

  const auto session = net::referee_session(parties.bob_ep(), parties.alice_ep(), v0, v1,
                                            rounds, seed, /*record_rounds=*/true);
  CHECK(session.rounds == rounds);
  CHECK(session.bob_to_alice_payload_bytes == rounds);  // one byte per round
  REQUIRE(session.round_log.size() == rounds);

  bell::JointCounts expected;
  for (std::uint64_t k = 0; k < rounds; ++k) {
    const auto o = bell::play_round(bell::Variant::reduced, seed, k, v0, v1);
    CHECK(session.round_log[k].r == o.r);
    CHECK(session.round_log[k].s0 == o.s0);
    CHECK(session.round_log[k].s1 == o.s1);
    expected.add(o.s0, o.s1);
  }
  CHECK(session.counts.cells == expected.cells);
}

TEST_CASE("zero-round session completes a clean handshake") {
  PartyPair parties;
  const auto session =
      net::referee_session(parties.bob_ep(), parties.alice_ep(), UnitVec3::z_axis(),
                           UnitVec3::x_axis(), 0, 92);
  CHECK(session.counts.rounds == 0);
  CHECK(session.bob_to_alice_payload_bytes == 0);
}

TEST_CASE("identical seeds give identical sessions across the wire") {
  const UnitVec3 v0 = UnitVec3::z_axis();
  const UnitVec3 v1 = UnitVec3::from_spherical(kPi / 4, 0.0);
  bell::JointCounts first;
  for (int repeat = 0; repeat < 2; ++repeat) {
    PartyPair parties;
    const auto session = net::referee_session(parties.bob_ep(), parties.alice_ep(), v0,
                                              v1, 3'000, 93, true);
    if (repeat == 0) {
      first = session.counts;
    } else {
      CHECK(session.counts.cells == first.cells);
    }
  }
}

TEST_CASE("statistics across the loopback match the closed form") {
  PartyPair parties;
  const UnitVec3 v0 = UnitVec3::z_axis();
  const UnitVec3 v1 = UnitVec3::from_spherical(kPi / 4, 0.0);
  constexpr std::uint64_t rounds = 100'000;
  const auto session =
      net::referee_session(parties.bob_ep(), parties.alice_ep(), v0, v1, rounds, 94);
  for (const int s0 : {-1, +1}) {
    for (const int s1 : {-1, +1}) {
      const auto est = stats::binomial_estimate(session.counts.cell(s0, s1), rounds);
      CHECK(stats::sigma_distance(est, analytic::pe(s0, s1, v0, v1)) < 4.0);
    }
  }
}

TEST_CASE("bob service rejects SETTING before INIT") {
  net::TcpListener listener = net::TcpListener::bind("127.0.0.1", 0);
  std::jthread service([&] { net::bob_service(listener, 1); });
  net::TcpStream conn = net::connect_to("127.0.0.1", listener.port());
  conn.write_frame(wire::make_setting(UnitVec3::z_axis()));
  const auto reply = conn.read_frame();
  CHECK(reply.kind == wire::Kind::error);
  CHECK(wire::parse_error(reply).find("INIT") != std::string::npos);
}

TEST_CASE("bob service rejects non-increasing round numbers") {
  net::TcpListener listener = net::TcpListener::bind("127.0.0.1", 0);
  std::jthread service([&] { net::bob_service(listener, 1); });
  net::TcpStream conn = net::connect_to("127.0.0.1", listener.port());
  conn.write_frame(wire::make_init(95));
  conn.write_frame(wire::make_setting(UnitVec3::z_axis()));
  conn.write_frame(wire::make_outcome_request(4));
  (void)conn.read_frame();  // BOB_BIT 4
  (void)conn.read_frame();  // OUTCOME 4
  conn.write_frame(wire::make_outcome_request(4));
  const auto reply = conn.read_frame();
  CHECK(reply.kind == wire::Kind::error);
  CHECK(wire::parse_error(reply).find("strictly increasing") != std::string::npos);
}

TEST_CASE("alice service refuses an outcome before the round's bit") {
  net::TcpListener listener = net::TcpListener::bind("127.0.0.1", 0);
  std::jthread service([&] { net::alice_service(listener, 1); });
  net::TcpStream conn = net::connect_to("127.0.0.1", listener.port());
  conn.write_frame(wire::make_init(96));
  conn.write_frame(wire::make_setting(UnitVec3::z_axis()));
  conn.write_frame(wire::make_outcome_request(0));
  const auto reply = conn.read_frame();
  CHECK(reply.kind == wire::Kind::error);
  CHECK(wire::parse_error(reply).find("BOB_BIT") != std::string::npos);
}

TEST_CASE("connection loss aborts the session with a partial-counts error") {
  net::TcpListener dead_bob = net::TcpListener::bind("127.0.0.1", 0);
  net::TcpListener alice_listener = net::TcpListener::bind("127.0.0.1", 0);
  std::jthread closer([&] {
    net::TcpStream conn = dead_bob.accept();
    conn.close();  // drop Bob mid-handshake
  });
  std::jthread alice([&] { net::alice_service(alice_listener, 1); });
  try {
    net::referee_session({"127.0.0.1", dead_bob.port()},
                         {"127.0.0.1", alice_listener.port()}, UnitVec3::z_axis(),
                         UnitVec3::x_axis(), 100, 97);
    FAIL("session should have aborted");
  } catch (const net::NetError& e) {
    CHECK(std::string(e.what()).find("partial counts") != std::string::npos);
  }
  // Unblock the Alice service so its thread can finish.
  try {
    net::TcpStream poke = net::connect_to("127.0.0.1", alice_listener.port(), 5, 10);
    poke.write_frame(wire::make_done());
  } catch (...) {
  }
}

TEST_CASE("malformed frames close the session with an error frame") {
  net::TcpListener listener = net::TcpListener::bind("127.0.0.1", 0);
  std::jthread service([&] { net::bob_service(listener, 1); });
  net::TcpStream conn = net::connect_to("127.0.0.1", listener.port());
  const std::array<std::uint8_t, wire::kHeaderSize> garbage = {0xee, 1, 2, 3, 4, 5,
                                                               6,    7, 8, 9, 10};
  conn.write_all(garbage.data(), garbage.size());
  const auto reply = conn.read_frame();
  CHECK(reply.kind == wire::Kind::error);
}

}  // TEST_SUITE
