// Copyright 2026 The ESEDS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eseds/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>

namespace eseds {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::kTransport, what + ": " + std::strerror(errno));
}

// Returns false on orderly EOF before the first byte.
bool read_full(int fd, std::uint8_t* dst, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, dst + got, n - got, 0);
    if (r == 0) {
      if (got == 0) return false;
      throw Error(ErrorCode::kTransport, "connection closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

void write_full(int fd, std::span<const std::uint8_t> data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t r =
        ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (r < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    sent += static_cast<std::size_t>(r);
  }
}

// Reads one frame; empty result on clean EOF. Throws kProtocol for a bad
// length prefix, before reading the body.
std::vector<std::uint8_t> read_frame(int fd) {
  std::array<std::uint8_t, wire::kLengthPrefix> prefix;
  if (!read_full(fd, prefix.data(), prefix.size())) return {};
  const std::uint32_t len = wire::body_length(prefix);
  std::vector<std::uint8_t> frame(wire::kLengthPrefix + len);
  std::copy(prefix.begin(), prefix.end(), frame.begin());
  read_full(fd, frame.data() + wire::kLengthPrefix, len);
  return frame;
}

std::uint16_t parse_port(const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || v < 0 || v > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "bad port '" + text + "'");
  }
  return static_cast<std::uint16_t>(v);
}

}  // namespace

Endpoint Endpoint::parse(const std::string& text) {
  Endpoint ep;
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    if (!text.empty()) ep.host = text;
    return ep;
  }
  if (colon > 0) ep.host = text.substr(0, colon);
  ep.port = parse_port(text.substr(colon + 1));
  return ep;
}

Endpoint Endpoint::from_env() {
  Endpoint ep;
  if (const char* addr = std::getenv("ESEDS_ADDR")) ep = parse(addr);
  if (const char* port = std::getenv("ESEDS_PORT")) ep.port = parse_port(port);
  return ep;
}

TcpSession::TcpSession(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
      rc != 0) {
    throw Error(ErrorCode::kTransport,
                "cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd_ = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd_ < 0) continue;
    if (::connect(fd_, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) fail("cannot connect to " + host + ":" + service);
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpSession::~TcpSession() {
  if (fd_ >= 0) ::close(fd_);
}

std::vector<std::uint8_t> TcpSession::exchange(
    const std::vector<std::uint8_t>& frame) {
  write_full(fd_, frame);
  auto reply = read_frame(fd_);
  if (reply.empty()) {
    throw Error(ErrorCode::kTransport, "server closed the connection");
  }
  return reply;
}

TcpServer::TcpServer(SharedStore& store, const std::string& host,
                     std::uint16_t port)
    : store_(store) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail("socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw Error(ErrorCode::kInvalidArgument,
                "listen address must be an IPv4 literal, got " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    const int saved = errno;
    ::close(listen_fd_);
    errno = saved;
    fail("cannot listen on " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::start() {
  acceptor_ = std::thread([this] { serve(); });
}

void TcpServer::serve() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (stopping_) break;
      if (errno == EINTR || errno == ECONNABORTED) continue;
      fail("accept");
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard lock(conn_mu_);
    open_fds_.push_back(fd);
    connections_.emplace_back([this, fd] { handle_connection(fd); });
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  std::list<std::thread> threads;
  {
    std::lock_guard lock(conn_mu_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    threads.swap(connections_);
  }
  for (auto& t : threads) t.join();
}

void TcpServer::handle_connection(int fd) {
  try {
    for (;;) {
      std::vector<std::uint8_t> frame;
      wire::Message request;
      try {
        frame = read_frame(fd);
        if (frame.empty()) break;
        request = wire::decode(frame);
        if (!wire::is_request(wire::opcode_of(request))) {
          throw Error(ErrorCode::kProtocol, "response opcode sent as request");
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kProtocol) throw;
        // Malformed input: report once, then drop the connection.
        write_full(fd, wire::encode(wire::ErrorReply{e.code(), e.what()}));
        break;
      }
      write_full(fd, wire::encode(store_.handle(request)));
    }
  } catch (const Error&) {
    // Per-connection I/O failures stay isolated to this connection.
  }
  std::lock_guard lock(conn_mu_);
  open_fds_.remove(fd);
  ::close(fd);
}

}  // namespace eseds
