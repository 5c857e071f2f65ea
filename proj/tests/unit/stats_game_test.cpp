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

#include <cmath>

#include "eseds/game.hpp"
#include "eseds/stats.hpp"
#include "support/errors.hpp"

namespace eseds {
namespace {

using harness::code_of;

TEST(Stats, ChiSquare) {
  const auto flat = stats::chi_square_uniform({100, 100, 100, 100});
  EXPECT_EQ(flat.statistic, 0.0);
  EXPECT_EQ(flat.dof, 3u);
  EXPECT_NEAR(flat.p_value, 1.0, 1e-12);
  // (50^2 + 50^2) / 100 = 50 on 1 dof.
  const auto skew = stats::chi_square_uniform({150, 50});
  EXPECT_DOUBLE_EQ(skew.statistic, 50.0);
  EXPECT_LT(skew.p_value, 1e-10);
}

TEST(Stats, Summary) {
  const auto s = stats::summarize({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(2.5));
  EXPECT_DOUBLE_EQ(s.std_error, std::sqrt(2.5) / std::sqrt(5.0));
  // t(0.975, 4) = 2.776445.
  EXPECT_NEAR(s.ci_half_width, 2.776445 * s.std_error, 1e-5);
}

TEST(Stats, LinearFit) {
  const auto f = stats::linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_DOUBLE_EQ(f.slope, 2.0);
  EXPECT_DOUBLE_EQ(f.intercept, 1.0);
  EXPECT_DOUBLE_EQ(f.r2, 1.0);
}

TEST(Game, PositionGuesserBreaksFhope) {
  GameConfig cfg;
  cfg.trials = 500;
  cfg.target = Target::kFhope;
  const auto r = run_game(cfg);
  EXPECT_EQ(r.success_rate, 1.0);
  EXPECT_DOUBLE_EQ(r.mean_baseline, 0.5);
  EXPECT_NEAR(r.advantage, 0.5, 1e-12);
}

TEST(Game, PositionGuesserAgainstMainEseds) {
  GameConfig cfg;
  cfg.trials = 2000;
  const auto r = run_game(cfg);
  EXPECT_LE(r.advantage, 3 * r.std_error + 1e-12);
}

TEST(Game, Reproducible) {
  GameConfig cfg;
  cfg.trials = 300;
  cfg.adversary = AdversaryKind::kMultisetDistinguisher;
  cfg.seed = 77;
  EXPECT_EQ(run_game(cfg).outcomes, run_game(cfg).outcomes);
}

class Lopsided : public Adversary {
 public:
  Challenge choose() override { return {{0, 0}, {1, 1, 1}}; }
  Guess guess(const LeakageView&) override { return {0, 0}; }
};

TEST(Game, RejectsSizeMismatchAndFewTrials) {
  Lopsided adv;
  GameConfig cfg;
  cfg.trials = 100;
  EXPECT_EQ(code_of([&] { run_game(cfg, adv); }), ErrorCode::kInvalidArgument);
  cfg.trials = 99;
  EXPECT_EQ(code_of([&] { run_game(cfg); }), ErrorCode::kInvalidArgument);
}

TEST(Game, Names) {
  for (auto k : {AdversaryKind::kPositionGuesser, AdversaryKind::kMultisetDistinguisher}) {
    EXPECT_EQ(parse_adversary(to_string(k)), k);
  }
}

}  // namespace
}  // namespace eseds
