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

#include "eseds/cipher.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <array>
#include <memory>
#include <string>

#include "eseds/error.hpp"

namespace eseds {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

// One context per thread; EVP contexts are reusable after re-init.
EVP_CIPHER_CTX* thread_ctx() {
  thread_local CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error(ErrorCode::kInternal, "EVP_CIPHER_CTX_new failed");
  return ctx.get();
}

const EVP_CIPHER* gcm_for(const SecretKey& key) {
  return key.bits() == 128 ? EVP_aes_128_gcm() : EVP_aes_256_gcm();
}

void store_be64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
}

std::uint64_t load_be64(const std::uint8_t* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

}  // namespace

SecretKey::SecretKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() != 16 && bytes_.size() != 32) {
    throw Error(ErrorCode::kInvalidArgument,
                "key must be 16 or 32 bytes, got " +
                    std::to_string(bytes_.size()));
  }
}

SecretKey::~SecretKey() {
  if (!bytes_.empty()) OPENSSL_cleanse(bytes_.data(), bytes_.size());
}

SecretKey keygen(unsigned security_bits) {
  if (security_bits != 128 && security_bits != 256) {
    throw Error(ErrorCode::kInvalidArgument,
                "unsupported security parameter " +
                    std::to_string(security_bits) + " (use 128 or 256)");
  }
  std::vector<std::uint8_t> bytes(security_bits / 8);
  if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) {
    throw Error(ErrorCode::kInternal, "RAND_bytes failed");
  }
  return SecretKey(std::move(bytes));
}

Ciphertext Ciphertext::from_bytes(std::vector<std::uint8_t> bytes) {
  if (bytes.size() < kOverhead) {
    throw Error(ErrorCode::kFormat, "ciphertext shorter than nonce and tag");
  }
  return Ciphertext(std::move(bytes));
}

Ciphertext Ciphertext::from_bytes(std::span<const std::uint8_t> bytes) {
  return from_bytes(std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
}

Ciphertext seal(const SecretKey& key, std::span<const std::uint8_t> plaintext) {
  std::vector<std::uint8_t> out(Ciphertext::kOverhead + plaintext.size());
  std::uint8_t* nonce = out.data();
  std::uint8_t* body = out.data() + Ciphertext::kNonceSize;
  std::uint8_t* tag = body + plaintext.size();
  if (RAND_bytes(nonce, Ciphertext::kNonceSize) != 1) {
    throw Error(ErrorCode::kInternal, "RAND_bytes failed");
  }

  EVP_CIPHER_CTX* ctx = thread_ctx();
  int len = 0;
  bool ok = EVP_EncryptInit_ex(ctx, gcm_for(key), nullptr, key.bytes().data(),
                               nonce) == 1;
  ok = ok && EVP_EncryptUpdate(ctx, body, &len, plaintext.data(),
                               static_cast<int>(plaintext.size())) == 1;
  ok = ok && EVP_EncryptFinal_ex(ctx, body + len, &len) == 1;
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_GET_TAG,
                                 Ciphertext::kTagSize, tag) == 1;
  if (!ok) throw Error(ErrorCode::kInternal, "AES-GCM encryption failed");
  return Ciphertext::from_bytes(std::move(out));
}

std::vector<std::uint8_t> open(const SecretKey& key, const Ciphertext& c) {
  if (c.size() < Ciphertext::kOverhead) {
    throw Error(ErrorCode::kAuthentication, "ciphertext truncated");
  }
  const auto body = c.body();
  std::vector<std::uint8_t> out(body.size());
  std::array<std::uint8_t, Ciphertext::kTagSize> tag;
  std::copy(c.tag().begin(), c.tag().end(), tag.begin());

  EVP_CIPHER_CTX* ctx = thread_ctx();
  int len = 0;
  bool ok = EVP_DecryptInit_ex(ctx, gcm_for(key), nullptr, key.bytes().data(),
                               c.nonce().data()) == 1;
  ok = ok && EVP_DecryptUpdate(ctx, out.data(), &len, body.data(),
                               static_cast<int>(body.size())) == 1;
  ok = ok && EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_SET_TAG,
                                 Ciphertext::kTagSize, tag.data()) == 1;
  ok = ok && EVP_DecryptFinal_ex(ctx, out.data() + len, &len) == 1;
  if (!ok) {
    throw Error(ErrorCode::kAuthentication,
                "ciphertext failed authentication (wrong key or corrupted cell)");
  }
  return out;
}

Ciphertext encrypt(const SecretKey& key, Plaintext m, const Domain& dom) {
  dom.check(m);
  std::array<std::uint8_t, kPlaintextWidth> buf;
  store_be64(m, buf.data());
  return seal(key, buf);
}

Plaintext decrypt(const SecretKey& key, const Ciphertext& c) {
  const auto plain = open(key, c);
  if (plain.size() != kPlaintextWidth) {
    throw Error(ErrorCode::kFormat, "unexpected plaintext width");
  }
  return load_be64(plain.data());
}

Ciphertext encrypt_tagged(const SecretKey& key, const TaggedPlaintext& t,
                          const Domain& dom) {
  dom.check(t.value);
  std::array<std::uint8_t, kTaggedWidth> buf;
  store_be64(t.value, buf.data());
  store_be64(t.tie, buf.data() + 8);
  return seal(key, buf);
}

TaggedPlaintext decrypt_tagged(const SecretKey& key, const Ciphertext& c) {
  const auto plain = open(key, c);
  if (plain.size() != kTaggedWidth) {
    throw Error(ErrorCode::kFormat, "unexpected data-cell width");
  }
  return {load_be64(plain.data()), load_be64(plain.data() + 8)};
}

std::uint64_t prf(const SecretKey& key, Plaintext keyword,
                  std::uint64_t range) {
  if (range == 0) throw Error(ErrorCode::kInvalidArgument, "prf range is 0");
  std::array<std::uint8_t, 8> msg;
  store_be64(keyword, msg.data());
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> mac;
  unsigned int mac_len = 0;
  if (HMAC(EVP_sha256(), key.bytes().data(),
           static_cast<int>(key.bytes().size()), msg.data(), msg.size(),
           mac.data(), &mac_len) == nullptr) {
    throw Error(ErrorCode::kInternal, "HMAC-SHA256 failed");
  }
  // 128 bits reduced mod range keeps the modulo bias below 2^-64.
  const u128 wide = (static_cast<u128>(load_be64(mac.data())) << 64) |
                    load_be64(mac.data() + 8);
  return static_cast<std::uint64_t>(wide % range);
}

}  // namespace eseds
