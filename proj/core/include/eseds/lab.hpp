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
#include <string>
#include <string_view>
#include <vector>

#include "eseds/attacks.hpp"
#include "eseds/coins.hpp"
#include "eseds/transforms.hpp"

namespace eseds {

// Attack lab: build a target from synthetic data, attack it with perfect
// background knowledge (the multiset itself), report accuracy.

enum class AttackKind : std::uint8_t {
  kFrequency,
  kLp,
  kSorting,
  kCumulative,
  kBucketing,
};

enum class Distribution : std::uint8_t {
  kUniform,
  /// Zipf with exponent 1 over the domain values.
  kZipf,
  /// Every domain value at least once, the rest uniform; needs n >= N.
  kDense,
};

std::string_view to_string(AttackKind k);
AttackKind parse_attack(std::string_view name);
std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view name);

/// Shuffled sample of n plaintexts.
std::vector<Plaintext> sample_multiset(Distribution dist, std::uint64_t n,
                                       const Domain& dom, CoinSource& coins);

/// Runs one attack on one snapshot; throws kInapplicable when the target
/// does not leak what the attack needs.
std::vector<Plaintext> run_attack(AttackKind attack, const Snapshot& snap,
                                  const std::vector<Plaintext>& known,
                                  const Domain& dom, unsigned p = 1);

struct AttackLabConfig {
  Target target = Target::kDet;
  AttackKind attack = AttackKind::kFrequency;
  std::uint64_t n = 64;
  std::uint64_t domain_size = 64;
  Distribution distribution = Distribution::kUniform;
  std::uint64_t seed = 1;
  /// Fresh keys and coins per repetition; the multiset stays fixed.
  std::uint64_t repetitions = 1;
  unsigned p = 1;
};

struct AttackReport {
  AttackLabConfig config;
  bool applicable = true;
  std::string note;
  double accuracy = 0;
  double std_error = 0;
  /// max_m #(m) / n for the sampled multiset.
  double baseline = 0;
  std::vector<double> per_repetition;
};

AttackReport run_attack_lab(const AttackLabConfig& cfg);

}  // namespace eseds
