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

#include "eseds/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eseds/error.hpp"
#include "eseds/stats.hpp"

namespace eseds {

namespace {

class PositionGuesser final : public Adversary {
 public:
  Challenge choose() override { return {{0, 1}, {0, 1}}; }
  Guess guess(const LeakageView&) override { return {0, 0}; }
};

class MultisetDistinguisher final : public Adversary {
 public:
  explicit MultisetDistinguisher(std::uint64_t n) : n_(n) {}
  Challenge choose() override {
    return {std::vector<Plaintext>(n_, 0), std::vector<Plaintext>(n_, 1)};
  }
  Guess guess(const LeakageView& view) override {
    // FNV-1a over everything observable.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    for (const auto& d : view) {
      mix(d.position);
      mix(d.equality_class.value_or(~0ull));
      mix(d.order_rank.value_or(~0ull));
    }
    return {0, h & 1};
  }

 private:
  std::uint64_t n_;
};

SecretKey key_from(CoinSource& coins) {
  std::vector<std::uint8_t> bytes(32);
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    const std::uint64_t w = coins.bits();
    for (std::size_t b = 0; b < 8; ++b) bytes[i + b] = static_cast<std::uint8_t>(w >> (8 * b));
  }
  return SecretKey(std::move(bytes));
}

}  // namespace

std::string_view to_string(AdversaryKind k) {
  return k == AdversaryKind::kPositionGuesser ? "position_guesser"
                                              : "multiset_distinguisher";
}

AdversaryKind parse_adversary(std::string_view name) {
  if (name == "position_guesser") return AdversaryKind::kPositionGuesser;
  if (name == "multiset_distinguisher") {
    return AdversaryKind::kMultisetDistinguisher;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown adversary '" + std::string(name) +
                  "' (position_guesser, multiset_distinguisher)");
}

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind,
                                          std::uint64_t multiset_size) {
  if (kind == AdversaryKind::kPositionGuesser) {
    return std::make_unique<PositionGuesser>();
  }
  if (multiset_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "multiset size must be >= 1");
  }
  return std::make_unique<MultisetDistinguisher>(multiset_size);
}

TrialOutcome run_trial(Adversary& adversary, Target target, const Domain& dom,
                       CoinSource& coins) {
  const Challenge ch = adversary.choose();
  if (ch.m0.size() != ch.m1.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "challenge multisets differ in size (" +
                    std::to_string(ch.m0.size()) + " vs " +
                    std::to_string(ch.m1.size()) + "); trial rejected");
  }
  if (ch.m0.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "challenge multisets are empty");
  }
  const SecretKey key = key_from(coins);
  const bool b = coins.flip();
  const Snapshot snap =
      build_snapshot(target, key, dom, b ? ch.m1 : ch.m0, coins);
  const Guess g = adversary.guess(snap.view);

  TrialOutcome out;
  out.success = g.index < snap.truth.size() && snap.truth[g.index] == g.value;
  const auto hits = std::count(ch.m0.begin(), ch.m0.end(), g.value) +
                    std::count(ch.m1.begin(), ch.m1.end(), g.value);
  out.baseline = static_cast<double>(hits) /
                 static_cast<double>(ch.m0.size() + ch.m1.size());
  return out;
}

GameReport run_game(const GameConfig& cfg, Adversary& adversary) {
  if (cfg.trials < 100) {
    throw Error(ErrorCode::kInvalidArgument, "the game needs >= 100 trials");
  }
  const Domain dom(cfg.domain_size);
  CoinSource coins(cfg.seed);
  GameReport r;
  r.trials = cfg.trials;
  std::vector<double> diff;
  diff.reserve(cfg.trials);
  double baseline_sum = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const TrialOutcome o = run_trial(adversary, cfg.target, dom, coins);
    r.outcomes.push_back(o.success);
    r.successes += o.success;
    baseline_sum += o.baseline;
    diff.push_back((o.success ? 1.0 : 0.0) - o.baseline);
  }
  const auto s = stats::summarize(diff);
  r.success_rate = static_cast<double>(r.successes) / static_cast<double>(r.trials);
  r.mean_baseline = baseline_sum / static_cast<double>(r.trials);
  r.advantage = std::abs(s.mean);
  r.std_error = s.std_error;
  r.ci_half_width = s.ci_half_width;
  return r;
}

GameReport run_game(const GameConfig& cfg) {
  auto adversary = make_adversary(cfg.adversary, cfg.multiset_size);
  return run_game(cfg, *adversary);
}

}  // namespace eseds
