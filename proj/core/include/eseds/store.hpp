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

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/sparse_index.hpp"

namespace eseds {

/// Server-side storage. The server only ever sees ciphertexts and their
/// logical (rank) positions; it never holds key material.

enum class StoreMode : std::uint8_t {
  kDense = 0,
  kDecoupled = 1,
};

/// Marks "before the first" / "after the last" cell in insert_between.
inline constexpr std::uint64_t kSentinel = ~std::uint64_t{0};

/// Dense array of cells with shift-insert followed by a uniform random
/// rotation. The rotation is bookkept as a logical start offset into the
/// physical vector, so rotating is O(1) and only the shift is O(n).
class DenseStore {
 public:
  explicit DenseStore(std::uint64_t seed = std::random_device{}());

  /// Bulk load in logical order (no rotation applied).
  static DenseStore from_cells(std::vector<Ciphertext> cells,
                               std::uint64_t seed = std::random_device{}());

  std::uint64_t size() const { return physical_.size(); }
  const Ciphertext& get_cell(std::uint64_t j) const;

  /// Inserts c at logical index l (0 <= l <= n), then rotates by a fresh
  /// uniform offset in 0..n (new n - 1). Returns the offset used.
  std::uint64_t insert_at(std::uint64_t l, Ciphertext c);

  /// Same with an explicit rotation offset s; new C[j] = old C[j + s mod n].
  void insert_at(std::uint64_t l, Ciphertext c, std::uint64_t s);

  void rotate(std::uint64_t s);

  /// Cells in logical order.
  std::vector<Ciphertext> cells() const;

 private:
  std::vector<Ciphertext> physical_;
  std::uint64_t offset_ = 0;
  std::mt19937_64 rng_;
};

struct RebalanceCursor {
  /// Entries re-indexed so far in the current pass.
  std::uint64_t next_position = 0;
  /// Rotation offset drawn for this pass.
  std::uint64_t pending_rotation = 0;
  /// Store size when the pass started.
  std::uint64_t planned = 0;
  bool active = false;

  bool done() const { return !active; }
};

/// Cells keyed by explicit sparse indices in 0..2^bits-1. Inserts land at the
/// midpoint of their neighbours in O(log n); an incremental rebalance pass
/// later spaces all indices equidistantly and applies a fresh rotation.
///
/// During a pass the cells live in three generations, in logical order:
/// "head" (re-indexed entries that will end up last), "live" (entries still
/// carrying their old index) and "staged" (re-indexed entries that will end
/// up first). Steps only move entries across generation boundaries, so rank
/// order is unchanged until the final step, which concatenates staged ++ head
/// and thereby applies the rotation in one go.
class DecoupledStore {
 public:
  using Entry = std::pair<SparseIndex, Ciphertext>;

  explicit DecoupledStore(unsigned domain_bits = kMaxSparseBits,
                          std::uint64_t seed = std::random_device{}());

  /// Bulk load; indices must be strictly increasing and inside the domain.
  static DecoupledStore from_entries(unsigned domain_bits,
                                     std::vector<Entry> entries,
                                     std::uint64_t seed = std::random_device{}());

  unsigned domain_bits() const { return bits_; }
  const SparseIndex& domain_size() const { return domain_; }

  std::uint64_t size() const {
    return head_.tree.size() + live_.tree.size() + staged_.tree.size();
  }
  const Ciphertext& get_cell(std::uint64_t j) const;
  const SparseIndex& sparse_index(std::uint64_t j) const;

  /// Stores c at the midpoint between the neighbouring ranks j_left and
  /// j_right (kSentinel for the ends). Throws CollisionError when the gap
  /// between the neighbours is <= 1.
  SparseIndex insert_between(std::uint64_t j_left, std::uint64_t j_right,
                             Ciphertext c);

  /// insert_between that resolves collisions by synchronously re-spreading
  /// the smallest enclosing neighbourhood with at least 2x slack.
  SparseIndex insert_resolving(std::uint64_t j_left, std::uint64_t j_right,
                               Ciphertext c);

  /// Re-indexes up to batch entries of the current pass, starting a new pass
  /// when none is active. A finished pass leaves the entry with post-rotation
  /// rank i at (i + 1) * floor(|D| / (n + 1)).
  RebalanceCursor rebalance_step(std::uint64_t batch);

  /// Like rebalance_step but never moves the last old-index entry, so the
  /// pass cannot finish and logical order stays put. A background worker
  /// uses this; the rotation is then committed by a later rebalance_step.
  RebalanceCursor prepare_step(std::uint64_t batch);

  /// A pass is active and only its final, rotating step remains.
  bool awaiting_commit() const {
    return cursor_.active && live_.tree.size() <= 1;
  }

  /// Finishes the active pass, if any, and runs a fresh one unless the
  /// finished pass already left every entry equidistant.
  void rebalance_full();

  std::uint64_t passes_completed() const { return passes_; }

  const RebalanceCursor& cursor() const { return cursor_; }

  /// Entries in logical order. Indices are strictly increasing unless a pass
  /// is in progress.
  std::vector<Entry> entries() const;

 private:
  using Tree =
      __gnu_pbds::tree<SparseIndex, Ciphertext, std::less<SparseIndex>,
                       __gnu_pbds::rb_tree_tag,
                       __gnu_pbds::tree_order_statistics_node_update>;

  // A tree plus the exclusive index bounds its keys must stay within.
  struct Generation {
    Tree tree;
    SparseIndex lo;
    SparseIndex hi;
  };

  const std::pair<const SparseIndex, Ciphertext>& entry_at(std::uint64_t j) const;
  std::pair<Generation*, std::uint64_t> route(std::uint64_t l);
  std::uint64_t slot_of(std::uint64_t j_left, std::uint64_t j_right) const;
  static SparseIndex lower_bound_of(const Generation& g, std::uint64_t q);
  static SparseIndex upper_bound_of(const Generation& g, std::uint64_t q);
  SparseIndex place_midpoint(Generation& g, std::uint64_t q, Ciphertext c);
  SparseIndex place_resolving(Generation& g, std::uint64_t q, Ciphertext c);
  void begin_pass();
  void move_one();
  void finish_pass();

  unsigned bits_;
  SparseIndex domain_;
  Generation head_;
  Generation live_;
  Generation staged_;
  RebalanceCursor cursor_;
  SparseIndex step_ = 0;
  std::uint64_t phase_a_remaining_ = 0;
  std::uint64_t passes_ = 0;
  std::mt19937_64 rng_;
};

/// Dense or decoupled server state behind one interface.
class Store {
 public:
  static Store dense(std::uint64_t seed = std::random_device{}());
  static Store decoupled(unsigned domain_bits = kMaxSparseBits,
                         std::uint64_t seed = std::random_device{}());

  explicit Store(DenseStore s) : state_(std::move(s)) {}
  explicit Store(DecoupledStore s) : state_(std::move(s)) {}

  StoreMode mode() const;
  std::uint64_t length() const;
  const Ciphertext& get_cell(std::uint64_t j) const;

  /// Dense mode only; throws kWrongMode otherwise.
  std::uint64_t insert_at(std::uint64_t l, Ciphertext c);
  /// Decoupled mode only; resolves collisions.
  SparseIndex insert_between(std::uint64_t j_left, std::uint64_t j_right,
                             Ciphertext c);
  /// Decoupled mode only.
  RebalanceCursor rebalance_step(std::uint64_t batch);

  DenseStore& as_dense();
  const DenseStore& as_dense() const;
  DecoupledStore& as_decoupled();
  const DecoupledStore& as_decoupled() const;

  /// Binary persistence; see docs/formats.md. A decoupled store in the
  /// middle of a pass is written as if the pass had completed.
  void save(std::ostream& out) const;
  static Store load(std::istream& in,
                    std::uint64_t seed = std::random_device{}());
  void save_file(const std::filesystem::path& path) const;
  static Store load_file(const std::filesystem::path& path,
                         std::uint64_t seed = std::random_device{}());

  /// Structural equality: mode, cells in logical order and, for decoupled
  /// stores, the index width and every sparse index.
  friend bool operator==(const Store& a, const Store& b);

 private:
  std::variant<DenseStore, DecoupledStore> state_;
};

}  // namespace eseds
