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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eseds/ordering.hpp"

namespace eseds {

/// @file cipher.hpp
///
/// Probabilistic authenticated encryption of single cells (AES-GCM with a
/// random 96-bit nonce and a 128-bit tag) and the keyed PRF used by the
/// deterministic-encryption transform (HMAC-SHA256 reduced modulo n).
///
/// Byte layout of every ciphertext: nonce (12) || body || tag (16). The body
/// has the same length as the plaintext encoding, so ciphertexts of one
/// encoding width all have the same length.

/// Client-only key material. Never serialized by the store or the transport.
class SecretKey {
 public:
  /// Takes ownership of 16 or 32 raw key bytes.
  explicit SecretKey(std::vector<std::uint8_t> bytes);
  SecretKey(const SecretKey&) = default;
  SecretKey(SecretKey&&) noexcept = default;
  SecretKey& operator=(const SecretKey&) = default;
  SecretKey& operator=(SecretKey&&) noexcept = default;
  ~SecretKey();

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  unsigned bits() const { return static_cast<unsigned>(bytes_.size() * 8); }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Fresh uniformly random key; security_bits must be 128 or 256.
SecretKey keygen(unsigned security_bits = 256);

class Ciphertext {
 public:
  static constexpr std::size_t kNonceSize = 12;
  static constexpr std::size_t kTagSize = 16;
  static constexpr std::size_t kOverhead = kNonceSize + kTagSize;

  Ciphertext() = default;

  /// Wraps a serialized ciphertext; throws kFormat if shorter than the
  /// nonce and tag.
  static Ciphertext from_bytes(std::vector<std::uint8_t> bytes);
  static Ciphertext from_bytes(std::span<const std::uint8_t> bytes);

  std::span<const std::uint8_t> nonce() const {
    return std::span(bytes_).first(kNonceSize);
  }
  std::span<const std::uint8_t> body() const {
    return std::span(bytes_).subspan(kNonceSize, bytes_.size() - kOverhead);
  }
  std::span<const std::uint8_t> tag() const {
    return std::span(bytes_).last(kTagSize);
  }
  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }

  /// Mutable access for tests that tamper with stored cells.
  std::vector<std::uint8_t>& mutable_bytes() { return bytes_; }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;

 private:
  explicit Ciphertext(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)) {}
  std::vector<std::uint8_t> bytes_;
};

/// Width of a single-integer encoding (8-byte big-endian).
inline constexpr std::size_t kPlaintextWidth = 8;
/// Width of a data-cell encoding (value and tie tag, both 8-byte big-endian).
inline constexpr std::size_t kTaggedWidth = 16;
inline constexpr std::size_t kCiphertextSize =
    Ciphertext::kOverhead + kPlaintextWidth;
inline constexpr std::size_t kTaggedCiphertextSize =
    Ciphertext::kOverhead + kTaggedWidth;

/// Authenticated encryption of arbitrary bytes under a fresh random nonce.
Ciphertext seal(const SecretKey& key, std::span<const std::uint8_t> plaintext);

/// Inverse of seal; throws kAuthentication on a wrong key or any tampering.
std::vector<std::uint8_t> open(const SecretKey& key, const Ciphertext& c);

/// Encrypts plaintext m (checked against dom) as an 8-byte big-endian body.
Ciphertext encrypt(const SecretKey& key, Plaintext m, const Domain& dom);
Plaintext decrypt(const SecretKey& key, const Ciphertext& c);

/// Data-cell encryption: value and tie tag.
Ciphertext encrypt_tagged(const SecretKey& key, const TaggedPlaintext& t,
                          const Domain& dom);
TaggedPlaintext decrypt_tagged(const SecretKey& key, const Ciphertext& c);

/// Keyed pseudo-random map of keyword onto 0..range-1. Deterministic for a
/// fixed (key, keyword, range); throws kInvalidArgument when range is 0.
std::uint64_t prf(const SecretKey& key, Plaintext keyword,
                  std::uint64_t range);

}  // namespace eseds
