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

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/error.hpp"

namespace eseds::detail {

// Little-endian stream helpers for the store file family.

inline constexpr std::array<char, 6> kStoreMagic = {'E', 'S', 'E', 'D', 'S', '\0'};
inline constexpr std::uint16_t kStoreVersion = 1;
// Guards against absurd record lengths in corrupt files.
inline constexpr std::uint32_t kMaxRecordBytes = 16u << 20;

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>(v & 0xff);
    if constexpr (sizeof(T) > 1) v >>= 8;
  }
  out.write(buf.data(), buf.size());
}

inline void read_exact(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw Error(ErrorCode::kFormat, "store file truncated");
  }
}

template <typename T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> buf;
  read_exact(in, buf.data(), buf.size());
  T v = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    v = static_cast<T>((v << 8) | static_cast<std::uint8_t>(buf[i]));
  }
  return v;
}

inline void put_bytes(std::ostream& out, std::span<const std::uint8_t> b) {
  out.write(reinterpret_cast<const char*>(b.data()),
            static_cast<std::streamsize>(b.size()));
}

inline std::vector<std::uint8_t> get_bytes(std::istream& in, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  read_exact(in, reinterpret_cast<char*>(out.data()), n);
  return out;
}

inline void put_ciphertext(std::ostream& out, const Ciphertext& c) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.size()));
  put_bytes(out, c.bytes());
}

inline Ciphertext get_ciphertext(std::istream& in) {
  const auto len = get_le<std::uint32_t>(in);
  if (len > kMaxRecordBytes) {
    throw Error(ErrorCode::kFormat,
                "ciphertext record of " + std::to_string(len) + " bytes");
  }
  return Ciphertext::from_bytes(get_bytes(in, len));
}

struct StoreHeader {
  std::uint8_t mode = 0;
  std::uint16_t domain_bits = 0;
  std::uint64_t count = 0;
};

inline void put_header(std::ostream& out, const StoreHeader& h) {
  out.write(kStoreMagic.data(), kStoreMagic.size());
  put_le<std::uint16_t>(out, kStoreVersion);
  put_le<std::uint8_t>(out, h.mode);
  put_le<std::uint16_t>(out, h.domain_bits);
  put_le<std::uint64_t>(out, h.count);
}

inline StoreHeader get_header(std::istream& in) {
  std::array<char, kStoreMagic.size()> magic;
  read_exact(in, magic.data(), magic.size());
  if (magic != kStoreMagic) {
    throw Error(ErrorCode::kFormat, "not an eseds store file (bad magic)");
  }
  const auto version = get_le<std::uint16_t>(in);
  if (version != kStoreVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported store file version " + std::to_string(version));
  }
  StoreHeader h;
  h.mode = get_le<std::uint8_t>(in);
  h.domain_bits = get_le<std::uint16_t>(in);
  h.count = get_le<std::uint64_t>(in);
  return h;
}

inline void expect_eof(std::istream& in) {
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::kFormat, "trailing bytes after store records");
  }
}

}  // namespace eseds::detail
