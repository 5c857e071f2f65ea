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

#include <random>
#include <string>
#include <vector>

#include "eseds/wire.hpp"

namespace harness {

/// Uniformly chosen message kind with random field contents.
inline eseds::wire::Message random_message(std::mt19937_64& rng) {
  namespace w = eseds::wire;
  auto cell = [&] {
    std::vector<std::uint8_t> b(eseds::Ciphertext::kOverhead + rng() % 64);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    return eseds::Ciphertext::from_bytes(std::move(b));
  };
  switch (rng() % 10) {
    case 0: return w::GetCell{rng()};
    case 1: return w::InsertAt{rng(), cell()};
    case 2: return w::InsertBetween{rng(), rng(), cell()};
    case 3: return w::Length{};
    case 4: return w::RebalanceHint{rng()};
    case 5: return w::Save{};
    case 6: return w::Cell{cell()};
    case 7: {
      w::Ok ok;
      if (rng() % 2) {
        eseds::SparseIndex v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 64) | rng();
        ok.sparse = v;
      }
      return ok;
    }
    case 8: return w::Len{rng()};
    default: {
      std::string msg(rng() % 80, ' ');
      for (auto& ch : msg) ch = static_cast<char>('a' + rng() % 26);
      return w::ErrorReply{static_cast<eseds::ErrorCode>(1 + rng() % 13), msg};
    }
  }
}

}  // namespace harness
