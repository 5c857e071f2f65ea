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

#include <algorithm>
#include <string>

#include "eseds/error.hpp"
#include "eseds/store.hpp"

namespace eseds {

SparseIndex sparse_domain_size(unsigned bits) {
  if (bits < kMinSparseBits || bits > kMaxSparseBits || bits % 8 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sparse index width must be a multiple of 8 in 8..256, got " +
                    std::to_string(bits));
  }
  return SparseIndex(1) << bits;
}

std::vector<std::uint8_t> sparse_to_bytes(const SparseIndex& v, unsigned bits) {
  if (v >= sparse_domain_size(bits)) {
    throw Error(ErrorCode::kOutOfRange, "sparse index does not fit in " +
                                            std::to_string(bits) + " bits");
  }
  std::vector<std::uint8_t> out(bits / 8);
  SparseIndex x = v;
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = static_cast<std::uint8_t>(x & 0xff);
    x >>= 8;
  }
  return out;
}

SparseIndex sparse_from_bytes(std::span<const std::uint8_t> bytes) {
  SparseIndex v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return v;
}

std::string to_string(const SparseIndex& v) { return v.str(); }

DecoupledStore::DecoupledStore(unsigned domain_bits, std::uint64_t seed)
    : bits_(domain_bits), domain_(sparse_domain_size(domain_bits)), rng_(seed) {
  live_.lo = 0;
  live_.hi = domain_;
}

DecoupledStore DecoupledStore::from_entries(unsigned domain_bits,
                                            std::vector<Entry> entries,
                                            std::uint64_t seed) {
  DecoupledStore s(domain_bits, seed);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first >= s.domain_ ||
        (i > 0 && entries[i].first <= entries[i - 1].first)) {
      throw Error(ErrorCode::kFormat,
                  "sparse indices must be strictly increasing and < 2^" +
                      std::to_string(domain_bits));
    }
    s.live_.tree.insert(std::move(entries[i]));
  }
  return s;
}

const std::pair<const SparseIndex, Ciphertext>& DecoupledStore::entry_at(
    std::uint64_t j) const {
  if (j >= size()) {
    throw Error(ErrorCode::kOutOfRange, "cell index " + std::to_string(j) +
                                            " out of range for n=" +
                                            std::to_string(size()));
  }
  for (const Generation* g : {&head_, &live_, &staged_}) {
    if (j < g->tree.size()) return *g->tree.find_by_order(j);
    j -= g->tree.size();
  }
  throw Error(ErrorCode::kInternal, "rank lookup fell through");
}

const Ciphertext& DecoupledStore::get_cell(std::uint64_t j) const {
  return entry_at(j).second;
}

const SparseIndex& DecoupledStore::sparse_index(std::uint64_t j) const {
  return entry_at(j).first;
}

std::uint64_t DecoupledStore::slot_of(std::uint64_t j_left,
                                      std::uint64_t j_right) const {
  const std::uint64_t n = size();
  if (n == 0 && j_left == kSentinel && j_right == kSentinel) return 0;
  if (n > 0 && j_left == kSentinel && j_right == 0) return 0;
  if (n > 0 && j_right == kSentinel && j_left == n - 1) return n;
  if (j_left != kSentinel && j_right < n && j_right == j_left + 1) {
    return j_right;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "insert_between needs adjacent ranks, got (" +
                  std::to_string(j_left) + ", " + std::to_string(j_right) +
                  ") for n=" + std::to_string(n));
}

std::pair<DecoupledStore::Generation*, std::uint64_t> DecoupledStore::route(
    std::uint64_t l) {
  if (!cursor_.active) return {&live_, l};
  const std::uint64_t h = head_.tree.size();
  const std::uint64_t v = live_.tree.size();
  // After the last cell is cyclically the same gap as before the first.
  if (l == size()) l = 0;
  if (l < h) return {&head_, l};
  if (l <= h + v) return {&live_, l - h};
  return {&staged_, l - h - v};
}

SparseIndex DecoupledStore::lower_bound_of(const Generation& g,
                                           std::uint64_t q) {
  return q == 0 ? g.lo : g.tree.find_by_order(q - 1)->first;
}

SparseIndex DecoupledStore::upper_bound_of(const Generation& g,
                                           std::uint64_t q) {
  return q == g.tree.size() ? g.hi : g.tree.find_by_order(q)->first;
}

SparseIndex DecoupledStore::place_midpoint(Generation& g, std::uint64_t q,
                                           Ciphertext c) {
  const SparseIndex lo = lower_bound_of(g, q);
  const SparseIndex hi = upper_bound_of(g, q);
  if (hi - lo <= 1) {
    throw CollisionError("no free sparse index between " + to_string(lo) +
                         " and " + to_string(hi));
  }
  SparseIndex mid = lo + (hi - lo) / 2;
  g.tree.insert({mid, std::move(c)});
  return mid;
}

SparseIndex DecoupledStore::place_resolving(Generation& g, std::uint64_t q,
                                            Ciphertext c) {
  if (upper_bound_of(g, q) - lower_bound_of(g, q) > 1) {
    return place_midpoint(g, q, std::move(c));
  }
  // Grow a window of ranks [a, b) around the slot until its bounding indices
  // leave room for twice the entries it must hold.
  const std::uint64_t n = g.tree.size();
  std::uint64_t width = 1;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  SparseIndex left;
  SparseIndex right;
  for (;;) {
    a = q >= width ? q - width : 0;
    b = std::min<std::uint64_t>(n, q + width);
    left = lower_bound_of(g, a);
    right = upper_bound_of(g, b);
    const SparseIndex k2 = SparseIndex(b - a + 2);
    const SparseIndex span = right - left;
    if (span >= 2 * k2) break;
    if (a == 0 && b == n) {
      if (span >= k2) break;
      throw Error(ErrorCode::kCapacity,
                  "sparse index space 2^" + std::to_string(bits_) +
                      " cannot hold " + std::to_string(size() + 1) +
                      " entries");
    }
    width *= 2;
  }

  std::vector<Ciphertext> window;
  window.reserve(b - a + 1);
  std::vector<SparseIndex> old_keys;
  for (std::uint64_t r = a; r < b; ++r) {
    auto it = g.tree.find_by_order(r);
    old_keys.push_back(it->first);
    window.push_back(it->second);
  }
  for (const auto& key : old_keys) g.tree.erase(key);
  window.insert(window.begin() + static_cast<std::ptrdiff_t>(q - a),
                std::move(c));

  const SparseIndex step = (right - left) / (window.size() + 1);
  SparseIndex placed;
  for (std::size_t i = 0; i < window.size(); ++i) {
    SparseIndex key = left + step * (i + 1);
    if (i == q - a) placed = key;
    g.tree.insert({key, std::move(window[i])});
  }
  return placed;
}

SparseIndex DecoupledStore::insert_between(std::uint64_t j_left,
                                           std::uint64_t j_right,
                                           Ciphertext c) {
  auto [g, q] = route(slot_of(j_left, j_right));
  return place_midpoint(*g, q, std::move(c));
}

SparseIndex DecoupledStore::insert_resolving(std::uint64_t j_left,
                                             std::uint64_t j_right,
                                             Ciphertext c) {
  auto [g, q] = route(slot_of(j_left, j_right));
  return place_resolving(*g, q, std::move(c));
}

// Target layout: old rank (i + s) mod n0 gets index (i + 1) * step. Old ranks
// below s (phase A) are re-indexed front-first into head, which sits above
// the split; the rest (phase B) back-first into staged, below the split.
void DecoupledStore::begin_pass() {
  const std::uint64_t n = size();
  cursor_ = RebalanceCursor{};
  cursor_.planned = n;
  if (n == 0) return;
  step_ = domain_ / (n + 1);
  if (step_ < 2) {
    throw Error(ErrorCode::kCapacity,
                "sparse index space 2^" + std::to_string(bits_) +
                    " is too small to rebalance " + std::to_string(n) +
                    " entries");
  }
  const std::uint64_t s =
      std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_);
  const SparseIndex split = step_ * (n - s) + step_ / 2;
  head_ = Generation{{}, split, domain_};
  staged_ = Generation{{}, 0, split};
  cursor_.pending_rotation = s;
  cursor_.active = true;
  phase_a_remaining_ = s;
}

void DecoupledStore::move_one() {
  const std::uint64_t n0 = cursor_.planned;
  const std::uint64_t s = cursor_.pending_rotation;
  if (phase_a_remaining_ > 0) {
    auto it = live_.tree.begin();
    Ciphertext c = std::move(it->second);
    live_.tree.erase(it);
    const SparseIndex planned = head_.tree.empty()
                                    ? step_ * (n0 - s + 1)
                                    : head_.tree.rbegin()->first + step_;
    if (planned < head_.hi) {
      head_.tree.insert({planned, std::move(c)});
    } else {
      place_resolving(head_, head_.tree.size(), std::move(c));
    }
    --phase_a_remaining_;
  } else {
    auto it = std::prev(live_.tree.end());
    Ciphertext c = std::move(it->second);
    live_.tree.erase(it);
    if (staged_.tree.empty()) {
      staged_.tree.insert({step_ * (n0 - s), std::move(c)});
    } else if (staged_.tree.begin()->first - staged_.lo > step_) {
      staged_.tree.insert({staged_.tree.begin()->first - step_, std::move(c)});
    } else {
      place_resolving(staged_, 0, std::move(c));
    }
  }
  ++cursor_.next_position;
  if (live_.tree.empty()) finish_pass();
}

// Every head index lies above the split and every staged index below it, so
// one tree holding both reads staged ++ head: the rotated order.
void DecoupledStore::finish_pass() {
  live_.tree.swap(staged_.tree);
  for (const auto& e : head_.tree) live_.tree.insert(e);
  head_ = Generation{};
  staged_ = Generation{};
  cursor_.active = false;
  ++passes_;
}

RebalanceCursor DecoupledStore::rebalance_step(std::uint64_t batch) {
  if (!cursor_.active) begin_pass();
  for (std::uint64_t i = 0; i < batch && cursor_.active; ++i) move_one();
  return cursor_;
}

RebalanceCursor DecoupledStore::prepare_step(std::uint64_t batch) {
  if (!cursor_.active) begin_pass();
  for (std::uint64_t i = 0; i < batch && cursor_.active && !awaiting_commit();
       ++i) {
    move_one();
  }
  return cursor_;
}

void DecoupledStore::rebalance_full() {
  if (cursor_.active) {
    const std::uint64_t planned = cursor_.planned;
    while (cursor_.active) move_one();
    // Inserts that landed mid-pass kept ad hoc indices; space them too.
    if (size() == planned) return;
  }
  begin_pass();
  while (cursor_.active) move_one();
}

std::vector<DecoupledStore::Entry> DecoupledStore::entries() const {
  std::vector<Entry> out;
  out.reserve(size());
  for (const Generation* g : {&head_, &live_, &staged_}) {
    for (const auto& e : g->tree) out.push_back(e);
  }
  return out;
}

}  // namespace eseds
