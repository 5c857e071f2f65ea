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

#include "eseds/shared_store.hpp"

#include <type_traits>

namespace eseds {

SharedStore::SharedStore(Store store,
                         std::optional<std::filesystem::path> save_path)
    : store_(std::move(store)), save_path_(std::move(save_path)) {}

wire::Message SharedStore::handle(const wire::Message& request) {
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return wire::ErrorReply{e.code(), e.what()};
  } catch (const std::exception& e) {
    return wire::ErrorReply{ErrorCode::kInternal, e.what()};
  }
}

wire::Message SharedStore::dispatch(const wire::Message& request) {
  return std::visit(
      [this](const auto& req) -> wire::Message {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, wire::GetCell>) {
          return read([&](const Store& s) {
            return wire::Cell{s.get_cell(req.index)};
          });
        } else if constexpr (std::is_same_v<T, wire::Length>) {
          return read([](const Store& s) { return wire::Len{s.length()}; });
        } else if constexpr (std::is_same_v<T, wire::InsertAt>) {
          write([&](Store& s) { return s.insert_at(req.index, req.cell); });
          ++inserts_;
          return wire::Ok{};
        } else if constexpr (std::is_same_v<T, wire::InsertBetween>) {
          auto index = write([&](Store& s) {
            return s.insert_between(req.left, req.right, req.cell);
          });
          ++inserts_;
          return wire::Ok{std::move(index)};
        } else if constexpr (std::is_same_v<T, wire::RebalanceHint>) {
          write([&](Store& s) { return s.rebalance_step(req.batch); });
          return wire::Ok{};
        } else if constexpr (std::is_same_v<T, wire::Save>) {
          if (!save_path_) {
            throw Error(ErrorCode::kInvalidArgument,
                        "server has no store file to save to");
          }
          // Saving a mid-pass decoupled store copies it; readers may proceed.
          read([&](const Store& s) {
            s.save_file(*save_path_);
            return 0;
          });
          return wire::Ok{};
        } else {
          throw Error(ErrorCode::kProtocol, "response opcode sent as request");
        }
      },
      request);
}

Rebalancer::Rebalancer(SharedStore& store, RebalancerConfig cfg)
    : store_(store), cfg_(cfg), worker_([this] { run(); }) {}

Rebalancer::~Rebalancer() { stop(); }

void Rebalancer::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::uint64_t Rebalancer::passes_completed() const {
  return store_.read([](const Store& s) -> std::uint64_t {
    return s.mode() == StoreMode::kDecoupled
               ? s.as_decoupled().passes_completed()
               : 0;
  });
}

void Rebalancer::run() {
  std::uint64_t seen = store_.inserts();
  for (;;) {
    {
      std::unique_lock lock(mu_);
      if (cv_.wait_for(lock, cfg_.interval, [this] { return stopping_; })) {
        return;
      }
    }
    const std::uint64_t now = store_.inserts();
    const bool work = store_.read([&](const Store& s) {
      if (s.mode() != StoreMode::kDecoupled) return false;
      const auto& d = s.as_decoupled();
      if (d.cursor().active) return !d.awaiting_commit();
      return now - seen >= cfg_.trigger_inserts;
    });
    if (!work) continue;
    store_.write([&](Store& s) {
      auto& d = s.as_decoupled();
      if (!d.cursor().active) seen = now;
      return d.prepare_step(cfg_.batch);
    });
  }
}

}  // namespace eseds
