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

#include "eseds/attacks.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "eseds/error.hpp"

namespace eseds {

namespace {

Cost ipow(Cost base, unsigned p) {
  Cost out = 1;
  for (unsigned i = 0; i < p; ++i) out *= base;
  return out;
}

Cost absdiff(Cost a, Cost b) { return a > b ? a - b : b - a; }

void check_norm(unsigned p) {
  if (p != 1 && p != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "norm order p must be 1 or 2, got " + std::to_string(p));
  }
}

// One side of an alignment problem: keys with counts, padded to size k.
struct Side {
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> cumulative;
  // Position of each entry in (count desc, key asc) order.
  std::vector<std::size_t> freq_rank;
};

Side side_of(const Histogram& h) {
  Side s;
  std::uint64_t cum = 0;
  for (const auto& [key, count] : h) {
    s.keys.push_back(key);
    s.counts.push_back(count);
    cum += count;
    s.cumulative.push_back(cum);
  }
  return s;
}

// Appends zero-count entries up to k; new keys are the smallest values not
// already present.
void pad(Side& s, std::size_t k) {
  std::set<std::uint64_t> present(s.keys.begin(), s.keys.end());
  const std::uint64_t total = s.cumulative.empty() ? 0 : s.cumulative.back();
  std::uint64_t candidate = 0;
  while (s.keys.size() < k) {
    while (present.count(candidate) != 0) ++candidate;
    s.keys.push_back(candidate);
    present.insert(candidate);
    s.counts.push_back(0);
    s.cumulative.push_back(total);
  }
}

void rank(Side& s) {
  std::vector<std::size_t> idx(s.keys.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s.counts[a] != s.counts[b]) return s.counts[a] > s.counts[b];
    return s.keys[a] < s.keys[b];
  });
  s.freq_rank.assign(idx.size(), 0);
  for (std::size_t r = 0; r < idx.size(); ++r) s.freq_rank[idx[r]] = r;
}

// Solves primary * w + tie over padded sides and maps only the real
// ciphertext classes (the first real_rows rows).
AttackMapping solve(const Side& c, const Side& m, std::size_t real_rows,
                    const CostMatrix& primary, bool order_tie) {
  const std::size_t k = c.keys.size();
  // The tie-break sums to at most k * k, so it never outweighs one unit of
  // primary cost.
  const Cost w = static_cast<Cost>(k) * static_cast<Cost>(k) + 1;
  CostMatrix cost(k, std::vector<Cost>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Cost tie = order_tie ? absdiff(i, j)
                                 : absdiff(c.freq_rank[i], m.freq_rank[j]);
      cost[i][j] = primary[i][j] * w + tie;
    }
  }
  const auto col = solve_assignment(cost);
  AttackMapping out;
  for (std::size_t i = 0; i < real_rows; ++i) {
    out.guesses[c.keys[i]] = m.keys[col[i]];
  }
  return out;
}

}  // namespace

Histogram make_histogram(const std::vector<std::uint64_t>& items) {
  Histogram h;
  for (auto x : items) ++h[x];
  return h;
}

std::uint64_t class_of(const CellDescriptor& d) {
  return d.equality_class.value_or(d.position);
}

Histogram class_histogram(const LeakageView& view) {
  Histogram h;
  for (const auto& d : view) ++h[class_of(d)];
  return h;
}

std::uint64_t total(const Histogram& h) {
  std::uint64_t t = 0;
  for (const auto& [key, count] : h) t += count;
  return t;
}

Cdf make_cdf(const Histogram& h) {
  Cdf out;
  for (const auto& [key, count] : h) {
    out.total += count;
    out.keys.push_back(key);
    out.cumulative.push_back(out.total);
  }
  return out;
}

std::vector<Plaintext> AttackMapping::expand(const LeakageView& view) const {
  std::vector<Plaintext> out;
  out.reserve(view.size());
  for (const auto& d : view) {
    auto it = guesses.find(class_of(d));
    if (it == guesses.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mapping has no guess for class " +
                      std::to_string(class_of(d)));
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::uint64_t> ordered_classes(const LeakageView& view) {
  std::map<std::uint64_t, std::uint64_t> by_rank;
  for (const auto& d : view) {
    if (!d.order_rank) {
      throw Error(ErrorCode::kInapplicable, "view leaks no order");
    }
    by_rank.emplace(*d.order_rank, class_of(d));
  }
  std::vector<std::uint64_t> out;
  std::set<std::uint64_t> seen;
  for (const auto& [r, cls] : by_rank) {
    if (seen.insert(cls).second) out.push_back(cls);
  }
  return out;
}

double score(const std::vector<Plaintext>& guesses,
             const std::vector<Plaintext>& truth) {
  if (guesses.size() != truth.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "guess and truth lengths differ");
  }
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += guesses[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double frequency_baseline(const std::vector<Plaintext>& multiset) {
  if (multiset.empty()) return 0.0;
  std::uint64_t best = 0;
  for (const auto& [v, count] : make_histogram(multiset)) {
    best = std::max(best, count);
  }
  return static_cast<double>(best) / static_cast<double>(multiset.size());
}

AttackMapping frequency_analysis(const Histogram& c, const Histogram& m) {
  if (total(c) != total(m)) {
    throw Error(ErrorCode::kInvalidArgument,
                "histogram totals differ: " + std::to_string(total(c)) +
                    " vs " + std::to_string(total(m)));
  }
  Side cs = side_of(c);
  Side ms = side_of(m);
  const std::size_t k = std::max(cs.keys.size(), ms.keys.size());
  const std::size_t real = cs.keys.size();
  pad(ms, k);
  rank(cs);
  rank(ms);
  std::vector<std::size_t> m_at_rank(k);
  for (std::size_t j = 0; j < ms.keys.size(); ++j) m_at_rank[ms.freq_rank[j]] = j;
  AttackMapping out;
  for (std::size_t i = 0; i < real; ++i) {
    out.guesses[cs.keys[i]] = ms.keys[m_at_rank[cs.freq_rank[i]]];
  }
  return out;
}

AttackMapping lp_optimization(const Histogram& c, const Histogram& m,
                              unsigned p) {
  check_norm(p);
  Side cs = side_of(c);
  Side ms = side_of(m);
  const std::size_t real = cs.keys.size();
  const std::size_t k = std::max(cs.keys.size(), ms.keys.size());
  pad(cs, k);
  pad(ms, k);
  rank(cs);
  rank(ms);
  CostMatrix primary(k, std::vector<Cost>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      primary[i][j] = ipow(absdiff(cs.counts[i], ms.counts[j]), p);
    }
  }
  return solve(cs, ms, real, primary, false);
}

Cost lp_cost(const Histogram& c, const Histogram& m, const AttackMapping& x,
             unsigned p) {
  check_norm(p);
  Cost sum = 0;
  std::set<std::uint64_t> used;
  for (const auto& [cls, count] : c) {
    auto g = x.guesses.find(cls);
    if (g == x.guesses.end()) {
      throw Error(ErrorCode::kInvalidArgument, "mapping misses a class");
    }
    if (!used.insert(g->second).second) {
      throw Error(ErrorCode::kInvalidArgument, "mapping is not injective");
    }
    auto mi = m.find(g->second);
    sum += ipow(absdiff(count, mi == m.end() ? 0 : mi->second), p);
  }
  for (const auto& [value, count] : m) {
    if (used.count(value) == 0) sum += ipow(count, p);
  }
  return sum;
}

AttackMapping sorting_attack(const std::vector<std::uint64_t>& classes_in_order,
                             const Domain& dom) {
  if (classes_in_order.size() != dom.size()) {
    throw Error(ErrorCode::kInapplicable,
                "sorting attack needs a dense ciphertext set: " +
                    std::to_string(classes_in_order.size()) +
                    " classes for a domain of " + std::to_string(dom.size()));
  }
  AttackMapping out;
  for (std::uint64_t i = 0; i < classes_in_order.size(); ++i) {
    out.guesses[classes_in_order[i]] = i;
  }
  return out;
}

AttackMapping cumulative_attack(const Histogram& c, const Cdf& c_cdf,
                                const Histogram& m, const Cdf& m_cdf,
                                unsigned p) {
  check_norm(p);
  Side cs = side_of(c);
  Side ms = side_of(m);
  if (c_cdf.keys != cs.keys || c_cdf.cumulative != cs.cumulative ||
      m_cdf.keys != ms.keys || m_cdf.cumulative != ms.cumulative) {
    throw Error(ErrorCode::kInvalidArgument, "CDF does not match histogram");
  }
  const Cost nc = static_cast<Cost>(c_cdf.total);
  const Cost nm = static_cast<Cost>(m_cdf.total);
  if (nc == 0 || nm == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty histogram");
  }
  const std::size_t real = cs.keys.size();
  const std::size_t k = std::max(cs.keys.size(), ms.keys.size());
  pad(cs, k);
  pad(ms, k);
  rank(cs);
  rank(ms);
  // x / nc against y / nm, scaled by nc * nm to stay integral.
  CostMatrix primary(k, std::vector<Cost>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      primary[i][j] =
          ipow(absdiff(cs.counts[i] * nm, ms.counts[j] * nc), p) +
          ipow(absdiff(cs.cumulative[i] * nm, ms.cumulative[j] * nc), p);
    }
  }
  return solve(cs, ms, real, primary, true);
}

AttackMapping cumulative_attack(const Histogram& c, const Histogram& m,
                                unsigned p) {
  return cumulative_attack(c, make_cdf(c), m, make_cdf(m), p);
}

AttackMapping bucketing_attack(std::uint64_t n, std::vector<Plaintext> known) {
  if (known.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "background knowledge has " + std::to_string(known.size()) +
                    " items for " + std::to_string(n) + " cells");
  }
  std::sort(known.begin(), known.end());
  AttackMapping out;
  for (std::uint64_t i = 0; i < n; ++i) out.guesses[i] = known[i];
  return out;
}

}  // namespace eseds
