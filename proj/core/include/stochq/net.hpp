//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochq/bell.hpp"
#include "stochq/wire.hpp"

namespace stochq::net {

class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Protocol-order or framing violation; the message names the offending
/// frame kind.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Move-only RAII wrapper over a connected stream socket with framed,
/// buffered IO.  Writes accumulate until flush(); a read flushes before it
/// can block, so a request written ahead of a blocking read is always on
/// the wire first.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd);
  TcpStream(TcpStream&& o) noexcept;
  TcpStream& operator=(TcpStream&& o) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;
  ~TcpStream();

  bool valid() const { return fd_ >= 0; }
  /// Flushes pending writes (best effort), then closes.
  void close();

  void write_all(const std::uint8_t* data, std::size_t len);
  /// Throws NetError on EOF or socket error.  Flushes pending writes first.
  void read_exact(std::uint8_t* data, std::size_t len);
  void flush();

  void write_frame(const wire::Frame& frame);
  wire::Frame read_frame();

 private:
  void send_all(const std::uint8_t* data, std::size_t len);

  int fd_ = -1;
  std::vector<std::uint8_t> wbuf_;
  std::vector<std::uint8_t> rbuf_;
  std::size_t rpos_ = 0;
};

class TcpListener {
 public:
  /// Bind and listen; port 0 picks an ephemeral port (see port()).
  static TcpListener bind(const std::string& host, std::uint16_t port);

  TcpListener(TcpListener&& o) noexcept : fd_(o.fd_), port_(o.port_) { o.fd_ = -1; }
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  std::uint16_t port() const { return port_; }
  TcpStream accept();

 private:
  TcpListener(int fd, std::uint16_t port) : fd_(fd), port_(port) {}
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Connect with retries so a referee may start before the services finish
/// binding.
TcpStream connect_to(const std::string& host, std::uint16_t port,
                     int attempts = 100, int delay_ms = 50);

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

/// Parse "host:port".
Endpoint parse_endpoint(const std::string& address);

/// Serve one Bob session on an accepted connection: INIT, SETTING, then a
/// BOB_BIT + OUTCOME reply per round request, until DONE.  Outcomes are
/// recomputed per round from (shared seed, round), nothing else.
void serve_bob_session(TcpStream& conn);

/// Serve one Alice session.  Alice refuses to emit an OUTCOME for a round
/// whose BOB_BIT has not arrived.  Alice never holds a Bob endpoint; the
/// only inbound path is the referee connection.
void serve_alice_session(TcpStream& conn);

/// Accept-and-serve loop; max_sessions < 0 means serve until the process
/// dies.  Session-level protocol errors are reported on stderr and the
/// loop continues.  Returns the number of sessions served.
int bob_service(TcpListener& listener, int max_sessions = -1);
int alice_service(TcpListener& listener, int max_sessions = -1);

struct SessionResult {
  bell::JointCounts counts;
  std::vector<bell::RoundOutcome> round_log;  // filled when record_rounds
  std::uint64_t bob_to_alice_payload_bytes = 0;
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
};

/// Drive one session end to end: INIT and SETTING to both parties, per
/// round an OUTCOME request to Bob, relay of Bob's BOB_BIT to Alice, an
/// OUTCOME request to Alice, and collection of both outcomes.  Requests
/// are pipelined in windows; within a round the BOB_BIT always precedes
/// Alice's OUTCOME request.  Throws ProtocolError naming the offending
/// kind on any out-of-order frame.
SessionResult referee_session(const Endpoint& bob, const Endpoint& alice,
                              const UnitVec3& v0, const UnitVec3& v1,
                              std::uint64_t rounds, std::uint64_t seed,
                              bool record_rounds = false, std::size_t window = 4096);

}  // namespace stochq::net
