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
#include <memory>
#include <string_view>
#include <vector>

#include "eseds/transforms.hpp"

namespace eseds {

// Empirical indistinguishability game for data structures. In each trial
// the adversary names two equal-size multisets, the challenger encrypts one
// of them, and the adversary names a cell and a plaintext for it. The
// adversary's baseline is the frequency of its guessed plaintext in the
// union of both multisets.

struct Challenge {
  std::vector<Plaintext> m0;
  std::vector<Plaintext> m1;
};

struct Guess {
  std::uint64_t index = 0;
  Plaintext value = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual Challenge choose() = 0;
  virtual Guess guess(const LeakageView& view) = 0;
};

enum class AdversaryKind : std::uint8_t {
  /// M0 = M1 = {0, 1}; always guesses that cell 0 holds 0.
  kPositionGuesser,
  /// n zeros against n ones; guesses from a digest of the view.
  kMultisetDistinguisher,
};

std::string_view to_string(AdversaryKind k);
AdversaryKind parse_adversary(std::string_view name);

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind,
                                          std::uint64_t multiset_size = 4);

struct GameConfig {
  std::uint64_t trials = 10000;
  AdversaryKind adversary = AdversaryKind::kPositionGuesser;
  Target target = Target::kMainEseds;
  std::uint64_t seed = 1;
  /// Plaintext domain size.
  std::uint64_t domain_size = 256;
  /// Multiset size for the distinguisher.
  std::uint64_t multiset_size = 4;
};

struct TrialOutcome {
  bool success = false;
  double baseline = 0;
};

/// One experiment. Throws kInvalidArgument when |M0| != |M1| (the trial is
/// rejected).
TrialOutcome run_trial(Adversary& adversary, Target target, const Domain& dom,
                       CoinSource& coins);

struct GameReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0;
  double mean_baseline = 0;
  /// |mean(success - baseline)| over trials.
  double advantage = 0;
  /// Standard error of mean(success - baseline).
  double std_error = 0;
  double ci_half_width = 0;
  std::vector<bool> outcomes;
};

/// Needs trials >= 100.
GameReport run_game(const GameConfig& cfg);
GameReport run_game(const GameConfig& cfg, Adversary& adversary);

}  // namespace eseds
