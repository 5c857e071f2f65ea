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

#include "eseds/transport.hpp"

namespace eseds {

wire::Message Session::request(const wire::Message& msg) {
  const wire::Opcode op = wire::opcode_of(msg);
  if (!wire::is_request(op)) {
    throw Error(ErrorCode::kInvalidArgument, "not a request message");
  }
  const auto frame = wire::encode(msg);
  if (tap_) tap_(frame);
  ++stats_.requests_sent;
  if (op == wire::Opcode::kGetCell) ++stats_.cells_fetched;
  stats_.bytes_on_wire += frame.size();

  const auto reply_frame = exchange(frame);
  stats_.bytes_on_wire += reply_frame.size();
  wire::Message reply = wire::decode(reply_frame);
  if (auto* err = std::get_if<wire::ErrorReply>(&reply)) {
    throw Error(err->code, err->message);
  }
  if (wire::opcode_of(reply) != wire::response_for(op)) {
    throw Error(ErrorCode::kProtocol, "response does not match request");
  }
  return reply;
}

std::uint64_t Session::length() {
  return std::get<wire::Len>(request(wire::Length{})).n;
}

Ciphertext Session::get_cell(std::uint64_t j) {
  return std::get<wire::Cell>(request(wire::GetCell{j})).cell;
}

void Session::insert_at(std::uint64_t l, const Ciphertext& c) {
  request(wire::InsertAt{l, c});
}

SparseIndex Session::insert_between(std::uint64_t j_left,
                                    std::uint64_t j_right,
                                    const Ciphertext& c) {
  auto ok = std::get<wire::Ok>(request(wire::InsertBetween{j_left, j_right, c}));
  if (!ok.sparse) {
    throw Error(ErrorCode::kProtocol, "INSERT_BETWEEN reply lacks an index");
  }
  return *ok.sparse;
}

void Session::rebalance_hint(std::uint64_t batch) {
  request(wire::RebalanceHint{batch});
}

void Session::save() { request(wire::Save{}); }

std::vector<std::uint8_t> InProcessSession::exchange(
    const std::vector<std::uint8_t>& frame) {
  return wire::encode(store_.handle(wire::decode(frame)));
}

}  // namespace eseds
