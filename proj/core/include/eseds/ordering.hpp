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

#include <compare>
#include <cstdint>

namespace eseds {

using Plaintext = std::uint64_t;
using u128 = unsigned __int128;

/// Plaintext domain 0..size-1.
class Domain {
 public:
  explicit Domain(std::uint64_t size);

  /// Domain of 2^bits values, bits in 1..63.
  static Domain with_bits(unsigned bits);

  std::uint64_t size() const noexcept { return size_; }
  bool contains(Plaintext m) const noexcept { return m < size_; }

  /// Throws ErrorCode::kOutOfDomain unless contains(m).
  void check(Plaintext m) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::uint64_t size_;
};

/// (x - r) mod N without overflow.
std::uint64_t mod_offset(Plaintext x, Plaintext r, const Domain& dom);

/// ((x - r) mod N) < ((y - r) mod N): the order of the domain cut open at r.
bool mod_less(Plaintext x, Plaintext y, Plaintext r, const Domain& dom);

/// What a data cell actually encrypts: the plaintext plus a random tie tag.
/// Cells are totally ordered by (value, tie); equal plaintexts are ordered by
/// their tags, which were drawn from fair coins at insertion time.
struct TaggedPlaintext {
  Plaintext value = 0;
  std::uint64_t tie = 0;

  friend auto operator<=>(const TaggedPlaintext&,
                          const TaggedPlaintext&) = default;
};

/// The tagged domain, N * 2^64 points, with cyclic (modular) order. A tagged
/// plaintext maps to the integer value * 2^64 + tie.
class TaggedDomain {
 public:
  explicit TaggedDomain(const Domain& dom)
      : modulus_(static_cast<u128>(dom.size()) << 64) {}

  u128 modulus() const noexcept { return modulus_; }

  static u128 point(const TaggedPlaintext& t) {
    return (static_cast<u128>(t.value) << 64) | t.tie;
  }
  /// Smallest point carrying plaintext m.
  static u128 first_of(Plaintext m) { return static_cast<u128>(m) << 64; }
  /// Largest point carrying plaintext m.
  static u128 last_of(Plaintext m) {
    return (static_cast<u128>(m) << 64) | ~std::uint64_t{0};
  }

  /// (x - r) mod modulus.
  u128 offset(u128 x, u128 r) const {
    return x >= r ? x - r : x + (modulus_ - r);
  }

 private:
  u128 modulus_;
};

}  // namespace eseds
