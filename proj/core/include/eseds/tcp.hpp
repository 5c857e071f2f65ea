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

#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include "eseds/shared_store.hpp"
#include "eseds/transport.hpp"

namespace eseds {

inline constexpr std::uint16_t kDefaultPort = 7487;

/// Host and port from ESEDS_ADDR / ESEDS_PORT, falling back to
/// 127.0.0.1:7487. ESEDS_ADDR may itself be "host:port".
struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = kDefaultPort;

  static Endpoint from_env();
  /// Parses "host", "host:port" or ":port" on top of the defaults.
  static Endpoint parse(const std::string& text);
};

class TcpSession final : public Session {
 public:
  TcpSession(const std::string& host, std::uint16_t port);
  ~TcpSession() override;
  TcpSession(const TcpSession&) = delete;
  TcpSession& operator=(const TcpSession&) = delete;

 protected:
  std::vector<std::uint8_t> exchange(
      const std::vector<std::uint8_t>& frame) override;

 private:
  int fd_ = -1;
};

/// Thread-per-connection server. Port 0 binds an ephemeral port.
class TcpServer {
 public:
  TcpServer(SharedStore& store, const std::string& host, std::uint16_t port);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accepts connections until stop() is called from another thread.
  void serve();
  /// serve() on a background thread.
  void start();
  void stop();

 private:
  void handle_connection(int fd);

  SharedStore& store_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex conn_mu_;
  std::list<std::thread> connections_;
  std::list<int> open_fds_;
};

}  // namespace eseds
