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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/error.hpp"
#include "eseds/sparse_index.hpp"

namespace eseds::wire {

// Frame: u32 big-endian length (opcode + payload) | u8 opcode | payload.
// Every integer on the wire is big-endian. See docs/protocol.md.

inline constexpr std::size_t kLengthPrefix = 4;
inline constexpr std::uint32_t kMaxFrameBody = 16u << 20;
inline constexpr std::size_t kSparseWireBytes = 32;

enum class Opcode : std::uint8_t {
  kGetCell = 0x01,
  kInsertAt = 0x02,
  kInsertBetween = 0x03,
  kLength = 0x04,
  kRebalanceHint = 0x05,
  kSave = 0x06,
  kCell = 0x81,
  kOk = 0x82,
  kLen = 0x83,
  kError = 0xFF,
};

struct GetCell {
  std::uint64_t index = 0;
  friend bool operator==(const GetCell&, const GetCell&) = default;
};
struct InsertAt {
  std::uint64_t index = 0;
  Ciphertext cell;
  friend bool operator==(const InsertAt&, const InsertAt&) = default;
};
struct InsertBetween {
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  Ciphertext cell;
  friend bool operator==(const InsertBetween&, const InsertBetween&) = default;
};
struct Length {
  friend bool operator==(const Length&, const Length&) = default;
};
/// batch = 0 asks for a complete pass.
struct RebalanceHint {
  std::uint64_t batch = 0;
  friend bool operator==(const RebalanceHint&, const RebalanceHint&) = default;
};
struct Save {
  friend bool operator==(const Save&, const Save&) = default;
};
struct Cell {
  Ciphertext cell;
  friend bool operator==(const Cell&, const Cell&) = default;
};
/// Carries the sparse index chosen by INSERT_BETWEEN, nothing otherwise.
struct Ok {
  std::optional<SparseIndex> sparse;
  friend bool operator==(const Ok&, const Ok&) = default;
};
struct Len {
  std::uint64_t n = 0;
  friend bool operator==(const Len&, const Len&) = default;
};
struct ErrorReply {
  ErrorCode code = ErrorCode::kInternal;
  std::string message;
  friend bool operator==(const ErrorReply&, const ErrorReply&) = default;
};

using Message = std::variant<GetCell, InsertAt, InsertBetween, Length,
                             RebalanceHint, Save, Cell, Ok, Len, ErrorReply>;

Opcode opcode_of(const Message& m);
bool is_request(Opcode op);
/// The single non-error response opcode paired with a request opcode.
Opcode response_for(Opcode request);

/// Full frame including the length prefix.
std::vector<std::uint8_t> encode(const Message& m);

/// Decodes exactly one full frame. Throws kProtocol on unknown opcodes,
/// truncated or trailing bytes, and bodies over kMaxFrameBody.
Message decode(std::span<const std::uint8_t> frame);

/// Body length announced by a 4-byte prefix; throws kProtocol when it is 0
/// or above kMaxFrameBody.
std::uint32_t body_length(std::span<const std::uint8_t, kLengthPrefix> prefix);

}  // namespace eseds::wire
