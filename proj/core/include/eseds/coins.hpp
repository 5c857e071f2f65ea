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
#include <random>

namespace eseds {

/// Seedable random bit source for insertion tie tags and server rotation
/// offsets. Deterministic when constructed from a seed.
class CoinSource {
 public:
  explicit CoinSource(std::uint64_t seed) : engine_(seed) {}

  /// Seeded from the OS entropy pool.
  static CoinSource from_entropy();

  bool flip() { return (engine_() >> 63) != 0; }
  std::uint64_t bits() { return engine_(); }

  /// Uniform in 0..bound-1; bound must be >= 1.
  std::uint64_t uniform(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eseds
