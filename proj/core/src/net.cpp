//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/net.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <iostream>
#include <map>
#include <thread>

namespace stochq::net {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw NetError(what + ": " + std::strerror(errno));
}

void set_socket_options(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  int bufsize = 1 << 19;
  ::setsockopt(fd, SOL_SOCKET, SO_SNDBUF, &bufsize, sizeof(bufsize));
  ::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &bufsize, sizeof(bufsize));
}

constexpr std::size_t kIoBuffer = 1 << 16;

}  // namespace

TcpStream::TcpStream(int fd) : fd_(fd) {
  wbuf_.reserve(kIoBuffer);
  rbuf_.reserve(kIoBuffer);
}

TcpStream::TcpStream(TcpStream&& o) noexcept
    : fd_(o.fd_), wbuf_(std::move(o.wbuf_)), rbuf_(std::move(o.rbuf_)), rpos_(o.rpos_) {
  o.fd_ = -1;
  o.rpos_ = 0;
}

TcpStream& TcpStream::operator=(TcpStream&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.fd_;
    wbuf_ = std::move(o.wbuf_);
    rbuf_ = std::move(o.rbuf_);
    rpos_ = o.rpos_;
    o.fd_ = -1;
    o.rpos_ = 0;
  }
  return *this;
}

TcpStream::~TcpStream() { close(); }

void TcpStream::close() {
  if (fd_ >= 0) {
    try {
      flush();
    } catch (...) {
    }
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpStream::send_all(const std::uint8_t* data, std::size_t len) {
  std::size_t sent = 0;
  while (sent < len) {
    const ssize_t n = ::send(fd_, data + sent, len - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

void TcpStream::flush() {
  if (!wbuf_.empty()) {
    send_all(wbuf_.data(), wbuf_.size());
    wbuf_.clear();
  }
}

void TcpStream::write_all(const std::uint8_t* data, std::size_t len) {
  wbuf_.insert(wbuf_.end(), data, data + len);
  if (wbuf_.size() >= kIoBuffer) {
    flush();
  }
}

void TcpStream::read_exact(std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    if (rpos_ < rbuf_.size()) {
      const std::size_t take = std::min(len - got, rbuf_.size() - rpos_);
      std::memcpy(data + got, rbuf_.data() + rpos_, take);
      rpos_ += take;
      got += take;
      continue;
    }
    // The buffer ran dry and recv() may block: anything we owe the peer
    // must be on the wire first.
    flush();
    rbuf_.resize(kIoBuffer);
    rpos_ = 0;
    const ssize_t n = ::recv(fd_, rbuf_.data(), rbuf_.size(), 0);
    if (n == 0) {
      rbuf_.clear();
      throw NetError("connection closed by peer");
    }
    if (n < 0) {
      rbuf_.clear();
      if (errno == EINTR) continue;
      throw_errno("recv");
    }
    rbuf_.resize(static_cast<std::size_t>(n));
  }
}

void TcpStream::write_frame(const wire::Frame& frame) {
  const auto bytes = wire::encode(frame);
  write_all(bytes.data(), bytes.size());
}

wire::Frame TcpStream::read_frame() {
  std::array<std::uint8_t, wire::kHeaderSize> header_bytes{};
  read_exact(header_bytes.data(), header_bytes.size());
  const wire::Header header = wire::parse_header(header_bytes);
  wire::Frame frame;
  frame.kind = header.kind;
  frame.round = header.round;
  frame.payload.resize(header.payload_len);
  if (header.payload_len > 0) {
    read_exact(frame.payload.data(), frame.payload.size());
  }
  return frame;
}

TcpListener TcpListener::bind(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  if (::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res) != 0) {
    throw NetError("getaddrinfo failed for " + host);
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw NetError("could not bind " + host + ":" + port_str);
  }
  if (::listen(fd, 16) != 0) {
    ::close(fd);
    throw_errno("listen");
  }
  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  std::uint16_t actual = port;
  if (::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
    if (bound.ss_family == AF_INET) {
      actual = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    } else if (bound.ss_family == AF_INET6) {
      actual = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
    }
  }
  return TcpListener(fd, actual);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

TcpStream TcpListener::accept() {
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) {
    throw_errno("accept");
  }
  set_socket_options(fd);
  return TcpStream(fd);
}

TcpStream connect_to(const std::string& host, std::uint16_t port, int attempts,
                     int delay_ms) {
  const std::string port_str = std::to_string(port);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res) == 0) {
      for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
          ::freeaddrinfo(res);
          set_socket_options(fd);
          return TcpStream(fd);
        }
        ::close(fd);
      }
      ::freeaddrinfo(res);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
  }
  throw NetError("could not connect to " + host + ":" + port_str);
}

Endpoint parse_endpoint(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= address.size()) {
    throw NetError("endpoint must be host:port, got '" + address + "'");
  }
  Endpoint ep;
  ep.host = address.substr(0, colon);
  const long port = std::stol(address.substr(colon + 1));
  if (port < 0 || port > 65535) {
    throw NetError("port out of range in '" + address + "'");
  }
  ep.port = static_cast<std::uint16_t>(port);
  return ep;
}

namespace {

/// Shared session preamble: INIT then SETTING.
struct SessionStart {
  std::uint64_t seed = 0;
  UnitVec3 setting = UnitVec3::z_axis();
};

SessionStart read_session_start(TcpStream& conn) {
  const wire::Frame init = conn.read_frame();
  if (init.kind != wire::Kind::init) {
    throw ProtocolError(std::string("expected INIT, got ") + wire::kind_name(init.kind));
  }
  SessionStart start;
  start.seed = wire::parse_init(init);
  const wire::Frame setting = conn.read_frame();
  if (setting.kind != wire::Kind::setting) {
    throw ProtocolError(std::string("expected SETTING, got ") +
                        wire::kind_name(setting.kind));
  }
  start.setting = wire::parse_setting(setting);
  return start;
}

void expect_request(const wire::Frame& f) {
  if (!f.payload.empty()) {
    throw ProtocolError("OUTCOME request must have an empty payload");
  }
}

template <typename SessionFn>
int service_loop(TcpListener& listener, int max_sessions, const char* who,
                 SessionFn&& session) {
  int served = 0;
  while (max_sessions < 0 || served < max_sessions) {
    TcpStream conn = listener.accept();
    try {
      session(conn);
    } catch (const std::exception& e) {
      // Best effort: tell the peer why before dropping the connection.
      try {
        conn.write_frame(wire::make_error(e.what()));
      } catch (...) {
      }
      std::cerr << who << ": session aborted: " << e.what() << '\n';
    }
    ++served;
  }
  return served;
}

}  // namespace

void serve_bob_session(TcpStream& conn) {
  const SessionStart start = read_session_start(conn);
  std::int64_t last_round = -1;
  for (;;) {
    const wire::Frame frame = conn.read_frame();
    if (frame.kind == wire::Kind::done) {
      conn.write_frame(wire::make_done());
      return;
    }
    if (frame.kind != wire::Kind::outcome) {
      throw ProtocolError(std::string("expected OUTCOME request or DONE, got ") +
                          wire::kind_name(frame.kind));
    }
    expect_request(frame);
    if (static_cast<std::int64_t>(frame.round) <= last_round) {
      throw ProtocolError("round numbers must be strictly increasing (got " +
                          std::to_string(frame.round) + ")");
    }
    last_round = static_cast<std::int64_t>(frame.round);
    const bell::SharedVariable y = bell::shared_for_round(start.seed, frame.round);
    const bell::BobReducedResult result = bell::bob_reduced(y, start.setting);
    conn.write_frame(wire::make_bob_bit(frame.round, result.r));
    conn.write_frame(wire::make_outcome(frame.round, result.s0));
  }
}

void serve_alice_session(TcpStream& conn) {
  const SessionStart start = read_session_start(conn);
  std::map<std::uint64_t, int> pending_bits;
  std::int64_t last_bit_round = -1;
  for (;;) {
    const wire::Frame frame = conn.read_frame();
    if (frame.kind == wire::Kind::done) {
      conn.write_frame(wire::make_done());
      return;
    }
    if (frame.kind == wire::Kind::bob_bit) {
      if (static_cast<std::int64_t>(frame.round) <= last_bit_round) {
        throw ProtocolError("round numbers must be strictly increasing (got " +
                            std::to_string(frame.round) + ")");
      }
      last_bit_round = static_cast<std::int64_t>(frame.round);
      pending_bits[frame.round] = wire::parse_bit(frame);
      continue;
    }
    if (frame.kind != wire::Kind::outcome) {
      throw ProtocolError(std::string("expected BOB_BIT, OUTCOME request or DONE, got ") +
                          wire::kind_name(frame.kind));
    }
    expect_request(frame);
    const auto it = pending_bits.find(frame.round);
    if (it == pending_bits.end()) {
      throw ProtocolError("OUTCOME requested for round " + std::to_string(frame.round) +
                          " before its BOB_BIT");
    }
    const int r = it->second;
    pending_bits.erase(it);
    const bell::SharedVariable y = bell::shared_for_round(start.seed, frame.round);
    conn.write_frame(wire::make_outcome(frame.round, bell::alice_reduced(y, r, start.setting)));
  }
}

int bob_service(TcpListener& listener, int max_sessions) {
  return service_loop(listener, max_sessions, "bob", serve_bob_session);
}

int alice_service(TcpListener& listener, int max_sessions) {
  return service_loop(listener, max_sessions, "alice", serve_alice_session);
}

namespace {

wire::Frame read_expected(TcpStream& conn, wire::Kind kind, std::uint64_t round,
                          const char* from) {
  const wire::Frame frame = conn.read_frame();
  if (frame.kind == wire::Kind::error) {
    throw ProtocolError(std::string(from) + " reported: " + wire::parse_error(frame));
  }
  if (frame.kind != kind || frame.round != round) {
    throw ProtocolError(std::string("expected ") + wire::kind_name(kind) + " for round " +
                        std::to_string(round) + " from " + from + ", got " +
                        wire::kind_name(frame.kind) + " for round " +
                        std::to_string(frame.round));
  }
  return frame;
}

}  // namespace

SessionResult referee_session(const Endpoint& bob, const Endpoint& alice,
                              const UnitVec3& v0, const UnitVec3& v1,
                              std::uint64_t rounds, std::uint64_t seed,
                              bool record_rounds, std::size_t window) {
  // The window bounds bytes in flight well under the socket buffers, so
  // neither side can block mid-phase.
  window = std::clamp<std::size_t>(window, 1, 8192);
  TcpStream bob_conn = connect_to(bob.host, bob.port);
  TcpStream alice_conn = connect_to(alice.host, alice.port);

  SessionResult result;
  result.rounds = rounds;
  result.seed = seed;
  if (record_rounds) {
    result.round_log.reserve(rounds);
  }

  try {
    bob_conn.write_frame(wire::make_init(seed));
    alice_conn.write_frame(wire::make_init(seed));
    bob_conn.write_frame(wire::make_setting(v0));
    alice_conn.write_frame(wire::make_setting(v1));

    std::vector<wire::Frame> bits;
    std::vector<int> s0s;
    for (std::uint64_t base = 0; base < rounds; base += window) {
      const std::uint64_t hi = std::min<std::uint64_t>(rounds, base + window);
      bits.clear();
      s0s.clear();

      for (std::uint64_t k = base; k < hi; ++k) {
        bob_conn.write_frame(wire::make_outcome_request(k));
      }
      for (std::uint64_t k = base; k < hi; ++k) {
        wire::Frame bit = read_expected(bob_conn, wire::Kind::bob_bit, k, "bob");
        if (bit.payload.size() != 1) {
          throw ProtocolError("BOB_BIT payload must be exactly one byte");
        }
        const wire::Frame outcome = read_expected(bob_conn, wire::Kind::outcome, k, "bob");
        s0s.push_back(wire::parse_bit(outcome));
        bits.push_back(std::move(bit));
      }
      // Relay in order: each round's BOB_BIT strictly before Alice's request.
      for (std::uint64_t k = base; k < hi; ++k) {
        const wire::Frame& bit = bits[static_cast<std::size_t>(k - base)];
        result.bob_to_alice_payload_bytes += bit.payload.size();
        alice_conn.write_frame(bit);
        alice_conn.write_frame(wire::make_outcome_request(k));
      }
      for (std::uint64_t k = base; k < hi; ++k) {
        const wire::Frame outcome =
            read_expected(alice_conn, wire::Kind::outcome, k, "alice");
        const int s1 = wire::parse_bit(outcome);
        const int s0 = s0s[static_cast<std::size_t>(k - base)];
        const int r = wire::parse_bit(bits[static_cast<std::size_t>(k - base)]);
        result.counts.add(s0, s1);
        if (record_rounds) {
          result.round_log.push_back(bell::RoundOutcome{r, s0, s1});
        }
      }
    }

    bob_conn.write_frame(wire::make_done());
    alice_conn.write_frame(wire::make_done());
    read_expected(bob_conn, wire::Kind::done, 0, "bob");
    read_expected(alice_conn, wire::Kind::done, 0, "alice");
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    // Counts gathered so far are incomplete and must not be mistaken for a
    // finished session.
    throw NetError("session aborted after " + std::to_string(result.counts.rounds) +
                   " of " + std::to_string(rounds) + " rounds (partial counts): " +
                   e.what());
  }
  return result;
}

}  // namespace stochq::net
