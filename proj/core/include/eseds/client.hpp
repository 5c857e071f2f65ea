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
#include <optional>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/coins.hpp"
#include "eseds/ordering.hpp"
#include "eseds/transport.hpp"

namespace eseds {

/// Which insert request the client sends: INSERT_AT (dense store) or
/// INSERT_BETWEEN (decoupled store).
enum class InsertStyle : std::uint8_t { kDense, kDecoupled };

/// Inclusive plaintext interval; a > b wraps around the domain.
struct RangeQuery {
  Plaintext a = 0;
  Plaintext b = 0;
};

/// Inclusive index interval into the server array.
struct IndexRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Zero, one or two disjoint index intervals, ascending by lo.
struct RangeResult {
  std::vector<IndexRange> segments;

  bool empty() const { return segments.empty(); }
  std::uint64_t count() const;
  bool contains(std::uint64_t j) const;
  std::vector<std::uint64_t> indices() const;

  friend bool operator==(const RangeResult&, const RangeResult&) = default;
};

/// Client side of the interactive protocols. Holds the key; the session
/// only ever carries indices and ciphertexts.
///
/// Data cells encrypt (value, tie) where tie is a fresh 64-bit coin draw.
/// Cells are compared on value * 2^64 + tie modulo N * 2^64, relative to the
/// point stored in C[0], which makes the rotated array strictly increasing
/// from index 0 and puts a new copy of a repeated value at a uniformly
/// random slot of its run.
class Client {
 public:
  Client(SecretKey key, Domain dom, Session& session, CoinSource coins,
         InsertStyle style = InsertStyle::kDense);

  /// Encrypts m and inserts it at its place in the rotated order. Uses at
  /// most 1 + ceil(log2 n) GET_CELL requests. Returns the new size.
  std::uint64_t insert(Plaintext m);

  /// First index of the rotated run of values >= a (0 when all values are
  /// equal). Throws kEmptyStore on an empty store.
  std::uint64_t find_jmin(Plaintext a);
  /// Last index of the rotated run of values <= b (n - 1 when all values are
  /// equal). Throws kEmptyStore on an empty store.
  std::uint64_t find_jmax(Plaintext b);

  /// Exactly the indices whose plaintext lies in [a, b] (cyclically when
  /// a > b). At most 1 + 2 * ceil(log2 n) GET_CELL requests.
  RangeResult search_range(const RangeQuery& q);

  /// Index of the first cell of the smallest plaintext.
  std::uint64_t find_rotation();

  /// The k smallest plaintexts, ascending; needs 1 <= k <= n.
  std::vector<Plaintext> top_k(std::uint64_t k);

  /// Decrypted values of the cells named by r, in segment order.
  std::vector<Plaintext> fetch(const RangeResult& r);

  /// Sparse index chosen by the last decoupled insert.
  const std::optional<SparseIndex>& last_sparse_index() const {
    return last_sparse_;
  }

  const Domain& domain() const { return dom_; }
  Session& session() { return session_; }

 private:
  class Probe;

  SecretKey key_;
  Domain dom_;
  TaggedDomain tagged_;
  Session& session_;
  CoinSource coins_;
  InsertStyle style_;
  std::optional<SparseIndex> last_sparse_;
};

}  // namespace eseds
