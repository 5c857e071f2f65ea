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

#include "eseds/store.hpp"

#include "eseds/error.hpp"

namespace eseds {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Store Store::dense(std::uint64_t seed) { return Store(DenseStore(seed)); }

Store Store::decoupled(unsigned domain_bits, std::uint64_t seed) {
  return Store(DecoupledStore(domain_bits, seed));
}

StoreMode Store::mode() const {
  return std::holds_alternative<DenseStore>(state_) ? StoreMode::kDense
                                                    : StoreMode::kDecoupled;
}

std::uint64_t Store::length() const {
  return std::visit([](const auto& s) { return s.size(); }, state_);
}

const Ciphertext& Store::get_cell(std::uint64_t j) const {
  return std::visit(
      [j](const auto& s) -> const Ciphertext& { return s.get_cell(j); },
      state_);
}

std::uint64_t Store::insert_at(std::uint64_t l, Ciphertext c) {
  return as_dense().insert_at(l, std::move(c));
}

SparseIndex Store::insert_between(std::uint64_t j_left, std::uint64_t j_right,
                                  Ciphertext c) {
  return as_decoupled().insert_resolving(j_left, j_right, std::move(c));
}

RebalanceCursor Store::rebalance_step(std::uint64_t batch) {
  auto& s = as_decoupled();
  if (batch == 0) {
    s.rebalance_full();
    return s.cursor();
  }
  return s.rebalance_step(batch);
}

DenseStore& Store::as_dense() {
  if (auto* s = std::get_if<DenseStore>(&state_)) return *s;
  throw Error(ErrorCode::kWrongMode, "operation needs a dense store");
}

const DenseStore& Store::as_dense() const {
  if (const auto* s = std::get_if<DenseStore>(&state_)) return *s;
  throw Error(ErrorCode::kWrongMode, "operation needs a dense store");
}

DecoupledStore& Store::as_decoupled() {
  if (auto* s = std::get_if<DecoupledStore>(&state_)) return *s;
  throw Error(ErrorCode::kWrongMode, "operation needs a decoupled store");
}

const DecoupledStore& Store::as_decoupled() const {
  if (const auto* s = std::get_if<DecoupledStore>(&state_)) return *s;
  throw Error(ErrorCode::kWrongMode, "operation needs a decoupled store");
}

bool operator==(const Store& a, const Store& b) {
  if (a.mode() != b.mode()) return false;
  return std::visit(
      Overloaded{
          [&](const DenseStore& x) { return x.cells() == b.as_dense().cells(); },
          [&](const DecoupledStore& x) {
            const auto& y = b.as_decoupled();
            return x.domain_bits() == y.domain_bits() &&
                   x.entries() == y.entries();
          },
      },
      a.state_);
}

}  // namespace eseds
