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

#include "eseds/wire.hpp"

#include <type_traits>

namespace eseds::wire {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { be(v, 2); }
  void u32(std::uint32_t v) { be(v, 4); }
  void u64(std::uint64_t v) { be(v, 8); }
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void blob(std::span<const std::uint8_t> b) {
    u32(static_cast<std::uint32_t>(b.size()));
    bytes(b);
  }
  std::vector<std::uint8_t>& out() { return out_; }

 private:
  void be(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(be(4)); }
  std::uint64_t u64() { return be(8); }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::span<const std::uint8_t> blob() { return bytes(u32()); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
      throw Error(ErrorCode::kProtocol, "truncated frame");
    }
  }
  std::uint64_t be(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 8) | in_[pos_ + i];
    pos_ += width;
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

Ciphertext read_cell(Reader& r) {
  auto b = r.blob();
  if (b.size() < Ciphertext::kOverhead) {
    throw Error(ErrorCode::kProtocol, "ciphertext shorter than nonce and tag");
  }
  return Ciphertext::from_bytes(b);
}

}  // namespace

Opcode opcode_of(const Message& m) {
  static constexpr Opcode kByIndex[] = {
      Opcode::kGetCell,       Opcode::kInsertAt, Opcode::kInsertBetween,
      Opcode::kLength,        Opcode::kRebalanceHint, Opcode::kSave,
      Opcode::kCell,          Opcode::kOk,       Opcode::kLen,
      Opcode::kError,
  };
  return kByIndex[m.index()];
}

bool is_request(Opcode op) {
  return static_cast<std::uint8_t>(op) < 0x80;
}

Opcode response_for(Opcode request) {
  switch (request) {
    case Opcode::kGetCell:
      return Opcode::kCell;
    case Opcode::kLength:
      return Opcode::kLen;
    case Opcode::kInsertAt:
    case Opcode::kInsertBetween:
    case Opcode::kRebalanceHint:
    case Opcode::kSave:
      return Opcode::kOk;
    default:
      throw Error(ErrorCode::kProtocol, "not a request opcode");
  }
}

std::vector<std::uint8_t> encode(const Message& m) {
  Writer w;
  w.u32(0);  // patched below
  w.u8(static_cast<std::uint8_t>(opcode_of(m)));
  std::visit(
      [&w](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, GetCell>) {
          w.u64(msg.index);
        } else if constexpr (std::is_same_v<T, InsertAt>) {
          w.u64(msg.index);
          w.blob(msg.cell.bytes());
        } else if constexpr (std::is_same_v<T, InsertBetween>) {
          w.u64(msg.left);
          w.u64(msg.right);
          w.blob(msg.cell.bytes());
        } else if constexpr (std::is_same_v<T, RebalanceHint>) {
          w.u64(msg.batch);
        } else if constexpr (std::is_same_v<T, Cell>) {
          w.blob(msg.cell.bytes());
        } else if constexpr (std::is_same_v<T, Ok>) {
          if (msg.sparse) w.bytes(sparse_to_bytes(*msg.sparse, 8 * kSparseWireBytes));
        } else if constexpr (std::is_same_v<T, Len>) {
          w.u64(msg.n);
        } else if constexpr (std::is_same_v<T, ErrorReply>) {
          w.u16(static_cast<std::uint16_t>(msg.code));
          w.blob(std::span(reinterpret_cast<const std::uint8_t*>(msg.message.data()),
                           msg.message.size()));
        }
      },
      m);
  auto& out = w.out();
  const std::size_t body = out.size() - kLengthPrefix;
  if (body > kMaxFrameBody) {
    throw Error(ErrorCode::kProtocol, "frame exceeds 16 MiB");
  }
  for (int i = 0; i < 4; ++i) {
    out[i] = static_cast<std::uint8_t>(body >> (8 * (3 - i)));
  }
  return std::move(out);
}

std::uint32_t body_length(std::span<const std::uint8_t, kLengthPrefix> prefix) {
  const std::uint32_t len = (std::uint32_t{prefix[0]} << 24) |
                            (std::uint32_t{prefix[1]} << 16) |
                            (std::uint32_t{prefix[2]} << 8) | prefix[3];
  if (len == 0) throw Error(ErrorCode::kProtocol, "empty frame");
  if (len > kMaxFrameBody) {
    throw Error(ErrorCode::kProtocol,
                "frame length " + std::to_string(len) + " exceeds 16 MiB");
  }
  return len;
}

Message decode(std::span<const std::uint8_t> frame) {
  if (frame.size() < kLengthPrefix) {
    throw Error(ErrorCode::kProtocol, "truncated frame");
  }
  const std::uint32_t len = body_length(frame.first<kLengthPrefix>());
  if (frame.size() - kLengthPrefix != len) {
    throw Error(ErrorCode::kProtocol,
                frame.size() - kLengthPrefix < len ? "truncated frame"
                                                   : "trailing bytes after frame");
  }
  Reader r(frame.subspan(kLengthPrefix));
  const auto op = static_cast<Opcode>(r.u8());
  Message m;
  switch (op) {
    case Opcode::kGetCell:
      m = GetCell{r.u64()};
      break;
    case Opcode::kInsertAt: {
      InsertAt msg;
      msg.index = r.u64();
      msg.cell = read_cell(r);
      m = std::move(msg);
      break;
    }
    case Opcode::kInsertBetween: {
      InsertBetween msg;
      msg.left = r.u64();
      msg.right = r.u64();
      msg.cell = read_cell(r);
      m = std::move(msg);
      break;
    }
    case Opcode::kLength:
      m = Length{};
      break;
    case Opcode::kRebalanceHint:
      m = RebalanceHint{r.u64()};
      break;
    case Opcode::kSave:
      m = Save{};
      break;
    case Opcode::kCell:
      m = Cell{read_cell(r)};
      break;
    case Opcode::kOk: {
      Ok msg;
      if (r.remaining() > 0) msg.sparse = sparse_from_bytes(r.bytes(kSparseWireBytes));
      m = std::move(msg);
      break;
    }
    case Opcode::kLen:
      m = Len{r.u64()};
      break;
    case Opcode::kError: {
      ErrorReply msg;
      msg.code = static_cast<ErrorCode>(r.u16());
      auto text = r.blob();
      msg.message.assign(text.begin(), text.end());
      m = std::move(msg);
      break;
    }
    default:
      throw Error(ErrorCode::kProtocol,
                  "unknown opcode " + std::to_string(static_cast<int>(op)));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kProtocol, "trailing bytes after frame");
  }
  return m;
}

}  // namespace eseds::wire
