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
#include <map>
#include <vector>

#include "eseds/assignment.hpp"
#include "eseds/ordering.hpp"
#include "eseds/transforms.hpp"

namespace eseds {

// Snapshot plaintext-guessing attacks. Ciphertext-side inputs are leaked
// classes (an equality class when the view has one, else the position);
// plaintext-side inputs are the adversary's background knowledge.

/// Class or plaintext -> occurrence count.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

Histogram make_histogram(const std::vector<std::uint64_t>& items);
Histogram class_histogram(const LeakageView& view);
std::uint64_t total(const Histogram& h);

/// Exact CDF over the keys of a histogram in ascending key order:
/// cumulative[i] / total is the fraction of items with key <= keys[i].
struct Cdf {
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
};
Cdf make_cdf(const Histogram& h);

/// Leaked class -> guessed plaintext.
struct AttackMapping {
  std::map<std::uint64_t, Plaintext> guesses;

  /// Per-cell guesses for a view; throws if a cell's class has no guess.
  std::vector<Plaintext> expand(const LeakageView& view) const;
  friend bool operator==(const AttackMapping&, const AttackMapping&) = default;
};

/// Class key of a cell: its equality class, else its position.
std::uint64_t class_of(const CellDescriptor& d);

/// Distinct classes sorted by leaked order. Throws kInapplicable when the
/// view carries no order.
std::vector<std::uint64_t> ordered_classes(const LeakageView& view);

/// Fraction of positions where guess equals truth.
double score(const std::vector<Plaintext>& guesses,
             const std::vector<Plaintext>& truth);

/// max_m #(m) / n: the best any adversary can do without leakage.
double frequency_baseline(const std::vector<Plaintext>& multiset);

/// i-th most frequent class -> i-th most frequent plaintext; ties by
/// ascending key. Totals must match.
AttackMapping frequency_analysis(const Histogram& c, const Histogram& m);

/// p is 1 or 2 throughout.
///
/// Assignment minimizing sum |c_i - m_X(i)|^p (the l_p distance to the
/// power p), solved exactly. Both sides are padded with zero-count entries
/// to the same size; padding plaintexts are the smallest values absent from
/// m. Among optimal assignments it prefers the frequency-rank alignment.
AttackMapping lp_optimization(const Histogram& c, const Histogram& m,
                              unsigned p = 1);

/// The l_p objective of a mapping (sum of p-th powers over all classes of c
/// and all plaintexts of m; unmatched entries count against zero).
Cost lp_cost(const Histogram& c, const Histogram& m, const AttackMapping& x,
             unsigned p = 1);

/// i-th class in leaked order -> i-th domain value. Needs exactly N classes.
AttackMapping sorting_attack(const std::vector<std::uint64_t>& classes_in_order,
                             const Domain& dom);

/// Assignment minimizing sum |h_c - h_m|^p + |F_c - F_m|^p over aligned
/// normalized histograms h and CDFs F, in exact arithmetic. Class keys must
/// ascend in leaked order.
AttackMapping cumulative_attack(const Histogram& c, const Cdf& c_cdf,
                                const Histogram& m, const Cdf& m_cdf,
                                unsigned p = 1);
AttackMapping cumulative_attack(const Histogram& c, const Histogram& m,
                                unsigned p = 1);

/// Position i -> i-th smallest element of known; |known| must be n.
AttackMapping bucketing_attack(std::uint64_t n, std::vector<Plaintext> known);

}  // namespace eseds
