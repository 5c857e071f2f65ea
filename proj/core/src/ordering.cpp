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

#include "eseds/ordering.hpp"

#include <string>

#include "eseds/error.hpp"

namespace eseds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kOutOfDomain: return "out_of_domain";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kAuthentication: return "authentication";
    case ErrorCode::kWrongMode: return "wrong_mode";
    case ErrorCode::kCollision: return "collision";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kEmptyStore: return "empty_store";
    case ErrorCode::kInapplicable: return "inapplicable";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

Domain::Domain(std::uint64_t size) : size_(size) {
  if (size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "domain size must be >= 1");
  }
}

Domain Domain::with_bits(unsigned bits) {
  if (bits < 1 || bits > 63) {
    throw Error(ErrorCode::kInvalidArgument,
                "domain bits must be in 1..63, got " + std::to_string(bits));
  }
  return Domain(std::uint64_t{1} << bits);
}

void Domain::check(Plaintext m) const {
  if (!contains(m)) {
    throw Error(ErrorCode::kOutOfDomain,
                "plaintext " + std::to_string(m) + " outside domain 0.." +
                    std::to_string(size_ - 1));
  }
}

std::uint64_t mod_offset(Plaintext x, Plaintext r, const Domain& dom) {
  return x >= r ? x - r : x + (dom.size() - r);
}

bool mod_less(Plaintext x, Plaintext y, Plaintext r, const Domain& dom) {
  return mod_offset(x, r, dom) < mod_offset(y, r, dom);
}

}  // namespace eseds
