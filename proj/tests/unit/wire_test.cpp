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

#include <gtest/gtest.h>

#include <random>

#include "eseds/wire.hpp"
#include "support/errors.hpp"
#include "support/random_messages.hpp"

namespace eseds::wire {
namespace {

using harness::code_of;

TEST(Wire, LengthFrameLayout) {
  const auto f = encode(Length{});
  EXPECT_EQ(f, (std::vector<std::uint8_t>{0, 0, 0, 1, 0x04}));
}

TEST(Wire, GetCellRoundTrip) {
  const auto f = encode(GetCell{7});
  EXPECT_EQ(f.size(), 4u + 1 + 8);
  EXPECT_EQ(decode(f), Message(GetCell{7}));
}

TEST(Wire, OversizedFrame) {
  std::vector<std::uint8_t> f = {0x40, 0, 0, 0, 0x01};
  EXPECT_EQ(code_of([&] { decode(f); }), ErrorCode::kProtocol);
  const std::array<std::uint8_t, 4> prefix = {0x40, 0, 0, 0};
  EXPECT_EQ(code_of([&] { body_length(prefix); }), ErrorCode::kProtocol);
}

TEST(Wire, MalformedFrames) {
  auto f = encode(GetCell{7});
  auto truncated = f;
  truncated.pop_back();
  EXPECT_EQ(code_of([&] { decode(truncated); }), ErrorCode::kProtocol);
  auto trailing = f;
  trailing.push_back(0);
  EXPECT_EQ(code_of([&] { decode(trailing); }), ErrorCode::kProtocol);
  std::vector<std::uint8_t> unknown = {0, 0, 0, 1, 0x7e};
  EXPECT_EQ(code_of([&] { decode(unknown); }), ErrorCode::kProtocol);
  std::vector<std::uint8_t> empty = {0, 0, 0, 0};
  EXPECT_EQ(code_of([&] { decode(empty); }), ErrorCode::kProtocol);
  // Body length claims more than the GET_CELL payload holds.
  std::vector<std::uint8_t> short_body = {0, 0, 0, 3, 0x01, 0, 0};
  EXPECT_EQ(code_of([&] { decode(short_body); }), ErrorCode::kProtocol);
}

TEST(Wire, PairingTable) {
  EXPECT_EQ(response_for(Opcode::kGetCell), Opcode::kCell);
  EXPECT_EQ(response_for(Opcode::kLength), Opcode::kLen);
  EXPECT_EQ(response_for(Opcode::kInsertAt), Opcode::kOk);
  EXPECT_TRUE(is_request(Opcode::kSave));
  EXPECT_FALSE(is_request(Opcode::kError));
}

TEST(Wire, RandomRoundTrips) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const Message m = harness::random_message(rng);
    const auto f = encode(m);
    ASSERT_EQ(decode(f), m);
    ASSERT_EQ(encode(decode(f)), f);
  }
}

}  // namespace
}  // namespace eseds::wire
