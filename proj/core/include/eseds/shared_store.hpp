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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <thread>

#include "eseds/store.hpp"
#include "eseds/wire.hpp"

namespace eseds {

/// A Store behind a reader/writer lock, plus the server-side request handler.
/// GET_CELL and LENGTH take the shared role; everything else is exclusive.
class SharedStore {
 public:
  explicit SharedStore(Store store,
                       std::optional<std::filesystem::path> save_path = {});

  /// Serves one decoded request. Store errors come back as ErrorReply.
  wire::Message handle(const wire::Message& request);

  template <typename F>
  auto read(F&& f) const {
    std::shared_lock lock(mu_);
    return f(store_);
  }
  template <typename F>
  auto write(F&& f) {
    std::unique_lock lock(mu_);
    return f(store_);
  }

  /// Cells inserted since construction.
  std::uint64_t inserts() const { return inserts_.load(); }

 private:
  wire::Message dispatch(const wire::Message& request);

  Store store_;
  std::optional<std::filesystem::path> save_path_;
  mutable std::shared_mutex mu_;
  std::atomic<std::uint64_t> inserts_{0};
};

struct RebalancerConfig {
  /// Entries moved per exclusive section.
  std::uint64_t batch = 256;
  /// Pause between batches while a pass is running.
  std::chrono::milliseconds interval{5};
  /// Inserts that must accumulate before an idle rebalancer starts a pass.
  std::uint64_t trigger_inserts = 1024;
};

/// Background task that re-indexes decoupled stores in batches, taking the
/// writer role once per batch. It stops short of the final step: the
/// rotation is committed by the next REBALANCE_HINT, which a client sends
/// between operations, so no multi-round search or insert sees indices shift
/// under it. Does nothing for dense stores.
class Rebalancer {
 public:
  Rebalancer(SharedStore& store, RebalancerConfig cfg = {});
  ~Rebalancer();
  Rebalancer(const Rebalancer&) = delete;
  Rebalancer& operator=(const Rebalancer&) = delete;

  void stop();
  /// Completed passes of the served store, whoever committed them.
  std::uint64_t passes_completed() const;

 private:
  void run();

  SharedStore& store_;
  RebalancerConfig cfg_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace eseds
