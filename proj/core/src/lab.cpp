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

#include "eseds/lab.hpp"

#include <algorithm>
#include <random>

#include "eseds/error.hpp"
#include "eseds/stats.hpp"

namespace eseds {

namespace {

constexpr std::pair<AttackKind, std::string_view> kAttackNames[] = {
    {AttackKind::kFrequency, "frequency"},
    {AttackKind::kLp, "lp"},
    {AttackKind::kSorting, "sorting"},
    {AttackKind::kCumulative, "cumulative"},
    {AttackKind::kBucketing, "bucketing"},
};

constexpr std::pair<Distribution, std::string_view> kDistributionNames[] = {
    {Distribution::kUniform, "uniform"},
    {Distribution::kZipf, "zipf"},
    {Distribution::kDense, "dense"},
};

SecretKey key_from(CoinSource& coins) {
  std::vector<std::uint8_t> bytes(32);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(coins.bits());
  return SecretKey(std::move(bytes));
}

}  // namespace

std::string_view to_string(AttackKind k) {
  for (const auto& [kind, name] : kAttackNames) {
    if (kind == k) return name;
  }
  return "?";
}

AttackKind parse_attack(std::string_view name) {
  for (const auto& [kind, n] : kAttackNames) {
    if (n == name) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown attack '" + std::string(name) +
                  "' (frequency, lp, sorting, cumulative, bucketing)");
}

std::string_view to_string(Distribution d) {
  for (const auto& [dist, name] : kDistributionNames) {
    if (dist == d) return name;
  }
  return "?";
}

Distribution parse_distribution(std::string_view name) {
  for (const auto& [dist, n] : kDistributionNames) {
    if (n == name) return dist;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown distribution '" + std::string(name) +
                  "' (uniform, zipf, dense)");
}

std::vector<Plaintext> sample_multiset(Distribution dist, std::uint64_t n,
                                       const Domain& dom, CoinSource& coins) {
  std::vector<Plaintext> out;
  out.reserve(n);
  switch (dist) {
    case Distribution::kUniform:
      for (std::uint64_t i = 0; i < n; ++i) out.push_back(coins.uniform(dom.size()));
      break;
    case Distribution::kZipf: {
      if (dom.size() > (1u << 24)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "zipf sampling supports domains up to 2^24");
      }
      std::vector<double> w(dom.size());
      for (std::size_t r = 0; r < w.size(); ++r) w[r] = 1.0 / static_cast<double>(r + 1);
      std::discrete_distribution<std::uint64_t> zipf(w.begin(), w.end());
      for (std::uint64_t i = 0; i < n; ++i) out.push_back(zipf(coins.engine()));
      break;
    }
    case Distribution::kDense:
      if (n < dom.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "dense sample needs n >= N");
      }
      for (std::uint64_t v = 0; v < dom.size(); ++v) out.push_back(v);
      while (out.size() < n) out.push_back(coins.uniform(dom.size()));
      break;
  }
  std::shuffle(out.begin(), out.end(), coins.engine());
  return out;
}

std::vector<Plaintext> run_attack(AttackKind attack, const Snapshot& snap,
                                  const std::vector<Plaintext>& known,
                                  const Domain& dom, unsigned p) {
  const Histogram m = make_histogram(known);
  switch (attack) {
    case AttackKind::kFrequency:
      return frequency_analysis(class_histogram(snap.view), m).expand(snap.view);
    case AttackKind::kLp:
      return lp_optimization(class_histogram(snap.view), m, p).expand(snap.view);
    case AttackKind::kSorting:
      return sorting_attack(ordered_classes(snap.view), dom).expand(snap.view);
    case AttackKind::kCumulative: {
      // Re-key classes by leaked order so histogram keys ascend in order.
      const auto order = ordered_classes(snap.view);
      std::map<std::uint64_t, std::uint64_t> rank_of;
      for (std::uint64_t i = 0; i < order.size(); ++i) rank_of[order[i]] = i;
      Histogram c;
      for (const auto& d : snap.view) ++c[rank_of.at(class_of(d))];
      const AttackMapping by_rank = cumulative_attack(c, m, p);
      AttackMapping x;
      for (const auto& [r, guess] : by_rank.guesses) x.guesses[order[r]] = guess;
      return x.expand(snap.view);
    }
    case AttackKind::kBucketing: {
      const AttackMapping x = bucketing_attack(snap.view.size(), known);
      std::vector<Plaintext> out;
      for (const auto& d : snap.view) out.push_back(x.guesses.at(d.position));
      return out;
    }
  }
  throw Error(ErrorCode::kInternal, "unhandled attack");
}

AttackReport run_attack_lab(const AttackLabConfig& cfg) {
  if (cfg.n == 0 || cfg.repetitions == 0) {
    throw Error(ErrorCode::kInvalidArgument, "n and repetitions must be >= 1");
  }
  const Domain dom(cfg.domain_size);
  CoinSource coins(cfg.seed);
  const auto multiset = sample_multiset(cfg.distribution, cfg.n, dom, coins);
  AttackReport r;
  r.config = cfg;
  r.baseline = frequency_baseline(multiset);
  for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
    const SecretKey key = key_from(coins);
    const Snapshot snap = build_snapshot(cfg.target, key, dom, multiset, coins);
    try {
      const auto guesses = run_attack(cfg.attack, snap, multiset, dom, cfg.p);
      r.per_repetition.push_back(score(guesses, snap.truth));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInapplicable) throw;
      r.applicable = false;
      r.note = e.what();
      return r;
    }
  }
  const auto s = stats::summarize(r.per_repetition);
  r.accuracy = s.mean;
  r.std_error = s.std_error;
  return r;
}

}  // namespace eseds
