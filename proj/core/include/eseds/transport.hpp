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

#include <cstdint>
#include <functional>
#include <vector>

#include "eseds/shared_store.hpp"
#include "eseds/wire.hpp"

namespace eseds {

struct SessionStats {
  std::uint64_t requests_sent = 0;
  /// GET_CELL requests.
  std::uint64_t cells_fetched = 0;
  /// Request plus response frame bytes, length prefixes included.
  std::uint64_t bytes_on_wire = 0;

  friend bool operator==(const SessionStats&, const SessionStats&) = default;
};

/// Client end of one strict request/response connection.
class Session {
 public:
  virtual ~Session() = default;

  /// Sends a request frame and returns the paired response. A server
  /// ErrorReply is rethrown as Error with the server's code; any other
  /// mismatched response is a kProtocol error.
  wire::Message request(const wire::Message& msg);

  std::uint64_t length();
  Ciphertext get_cell(std::uint64_t j);
  void insert_at(std::uint64_t l, const Ciphertext& c);
  SparseIndex insert_between(std::uint64_t j_left, std::uint64_t j_right,
                             const Ciphertext& c);
  void rebalance_hint(std::uint64_t batch);
  void save();

  const SessionStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

  /// Observes every outgoing request frame (tests audit it for key bytes).
  void set_frame_tap(std::function<void(std::span<const std::uint8_t>)> tap) {
    tap_ = std::move(tap);
  }

 protected:
  /// Delivers one encoded request and returns the encoded response frame.
  virtual std::vector<std::uint8_t> exchange(
      const std::vector<std::uint8_t>& frame) = 0;

 private:
  SessionStats stats_;
  std::function<void(std::span<const std::uint8_t>)> tap_;
};

/// Runs every request through the codec and a SharedStore in this process.
class InProcessSession final : public Session {
 public:
  explicit InProcessSession(SharedStore& store) : store_(store) {}

 protected:
  std::vector<std::uint8_t> exchange(
      const std::vector<std::uint8_t>& frame) override;

 private:
  SharedStore& store_;
};

}  // namespace eseds
