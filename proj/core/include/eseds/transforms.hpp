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
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/coins.hpp"
#include "eseds/ordering.hpp"
#include "eseds/store.hpp"

namespace eseds {

// Legacy schemes laid out as encrypted arrays, so that a snapshot of the
// array leaks exactly what the scheme leaks. They exist as attack targets.

/// Head or chain member: encrypted keyword, encrypted row id, and the slot
/// of the next occurrence of the same keyword (-1 at the end of a chain).
struct ChainSlot {
  Ciphertext keyword;
  Ciphertext row_id;
  std::int64_t next = -1;
  friend bool operator==(const ChainSlot&, const ChainSlot&) = default;
};

/// Deterministic encryption: the first occurrence of m sits at
/// prf(k, m, n), moving to the next free slot on PRF collisions.
struct DetEseds {
  std::vector<ChainSlot> table;

  /// Row ids of every occurrence of m, following its chain.
  std::vector<std::uint64_t> lookup(const SecretKey& key, Plaintext m) const;

  void save(std::ostream& out) const;
  static DetEseds load(std::istream& in);
  friend bool operator==(const DetEseds&, const DetEseds&) = default;
};

/// Order-preserving encryption: the i-th smallest distinct value sits at
/// index i; further occurrences fill the slots after the last head.
struct OpeEseds {
  std::vector<ChainSlot> cells;

  std::vector<std::uint64_t> lookup(const SecretKey& key, Plaintext m) const;

  void save(std::ostream& out) const;
  static OpeEseds load(std::istream& in);
  friend bool operator==(const OpeEseds&, const OpeEseds&) = default;
};

/// Frequency-hiding OPE: one ciphertext per occurrence, sorted, ties in
/// random order. No row ids: every ciphertext is unique.
struct FhopeEseds {
  std::vector<Ciphertext> cells;

  void save(std::ostream& out) const;
  static FhopeEseds load(std::istream& in);
  friend bool operator==(const FhopeEseds&, const FhopeEseds&) = default;
};

/// Row ids are input positions 0..n-1.
DetEseds build_det(const SecretKey& key, const Domain& dom,
                   const std::vector<Plaintext>& multiset);
OpeEseds build_ope(const SecretKey& key, const Domain& dom,
                   const std::vector<Plaintext>& multiset);
FhopeEseds build_fhope(const SecretKey& key, const Domain& dom,
                       const std::vector<Plaintext>& multiset,
                       CoinSource& coins);

/// The scheme itself: inserts the multiset through the client protocol
/// into a fresh store whose rotation offsets come from rotation_seed.
Store build_eseds(const SecretKey& key, const Domain& dom,
                  const std::vector<Plaintext>& multiset, CoinSource& coins,
                  std::uint64_t rotation_seed,
                  StoreMode mode = StoreMode::kDense);

/// What a snapshot adversary sees of one cell.
struct CellDescriptor {
  std::uint64_t position = 0;
  /// Cells with equal plaintext share a class (DET, OPE).
  std::optional<std::uint64_t> equality_class;
  /// Rank in plaintext order (OPE heads and chains, FH-OPE).
  std::optional<std::uint64_t> order_rank;
  friend bool operator==(const CellDescriptor&, const CellDescriptor&) = default;
};
using LeakageView = std::vector<CellDescriptor>;

/// Equality classes are the head slot of each chain; OPE order ranks are the
/// head index of the cell's chain.
LeakageView leakage_view(const DetEseds& s);
LeakageView leakage_view(const OpeEseds& s);
/// Positions carry order; nothing else.
LeakageView leakage_view(const FhopeEseds& s);
/// Bare positions: the view depends on n only.
LeakageView leakage_view(const Store& s);

/// Per-cell plaintexts, for scoring attacks.
std::vector<Plaintext> plaintexts(const SecretKey& key, const DetEseds& s);
std::vector<Plaintext> plaintexts(const SecretKey& key, const OpeEseds& s);
std::vector<Plaintext> plaintexts(const SecretKey& key, const FhopeEseds& s);
std::vector<Plaintext> plaintexts(const SecretKey& key, const Store& s);

/// Attack targets: the scheme itself and the three legacy layouts.
enum class Target : std::uint8_t { kMainEseds, kFhope, kOpe, kDet };

std::string_view to_string(Target t);
/// Accepts main_eseds, fhope, ope, det; throws kInvalidArgument otherwise.
Target parse_target(std::string_view name);

/// A built target as the adversary sees it, plus the per-cell truth.
struct Snapshot {
  LeakageView view;
  std::vector<Plaintext> truth;
};

/// Builds target from multiset with all randomness drawn from coins.
Snapshot build_snapshot(Target target, const SecretKey& key, const Domain& dom,
                        const std::vector<Plaintext>& multiset,
                        CoinSource& coins);

/// Mode byte of each transform in the store file family.
inline constexpr std::uint8_t kModeDet = 2;
inline constexpr std::uint8_t kModeOpe = 3;
inline constexpr std::uint8_t kModeFhope = 4;

}  // namespace eseds
