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

// Brute-force reference answers computed from plaintexts alone. Nothing in
// here calls into the protocol code, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Values = std::vector<std::uint64_t>;

inline bool in_range(std::uint64_t v, std::uint64_t a, std::uint64_t b) {
  return a <= b ? (a <= v && v <= b) : (v >= a || v <= b);
}

/// Indices whose value lies in [a, b], cyclically when a > b.
inline std::set<std::uint64_t> filter(const Values& cells, std::uint64_t a,
                                      std::uint64_t b) {
  std::set<std::uint64_t> out;
  for (std::uint64_t j = 0; j < cells.size(); ++j) {
    if (in_range(cells[j], a, b)) out.insert(j);
  }
  return out;
}

/// All start offsets s such that cells read from s are non-decreasing.
inline std::vector<std::uint64_t> sorted_starts(const Values& cells) {
  std::vector<std::uint64_t> out;
  const std::size_t n = cells.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (std::size_t i = 1; i < n && ok; ++i) {
      ok = cells[(s + i - 1) % n] <= cells[(s + i) % n];
    }
    if (ok) out.push_back(s);
  }
  return out;
}

/// True when cells is one of the n rotations of sorted(multiset).
inline bool is_rotation_of_sorted(const Values& cells, Values multiset) {
  if (cells.size() != multiset.size()) return false;
  if (cells.empty()) return true;
  std::sort(multiset.begin(), multiset.end());
  const std::size_t n = cells.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = cells[(s + i) % n] == multiset[i];
    if (same) return true;
  }
  return false;
}

inline std::uint64_t first_start(const Values& cells) {
  const auto starts = sorted_starts(cells);
  if (starts.empty()) throw std::logic_error("cells are not a sorted rotation");
  return starts.front();
}

/// Start of the run of values >= a in rotated order; wraps to the rotation
/// start when every value is below a.
inline std::uint64_t jmin(const Values& cells, std::uint64_t a) {
  const std::size_t n = cells.size();
  const std::uint64_t s = first_start(cells);
  for (std::size_t i = 0; i < n; ++i) {
    if (cells[(s + i) % n] >= a) return (s + i) % n;
  }
  return s;
}

/// End of the run of values <= b; the cell before the rotation start when
/// every value exceeds b.
inline std::uint64_t jmax(const Values& cells, std::uint64_t b) {
  const std::size_t n = cells.size();
  const std::uint64_t s = first_start(cells);
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < n; ++i) {
    if (cells[(s + i) % n] <= b) last = i;
  }
  return (s + last.value_or(n - 1)) % n;
}

/// k smallest values, ascending.
inline Values smallest(Values v, std::size_t k) {
  std::sort(v.begin(), v.end());
  v.resize(k);
  return v;
}

/// Positional matches of a fixed guess against every rotation of the truth,
/// averaged: the expected accuracy of guessing sorted order against a
/// uniformly rotated array.
inline double rotation_expectation(Values multiset) {
  std::sort(multiset.begin(), multiset.end());
  const std::size_t n = multiset.size();
  std::uint64_t hits = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) hits += multiset[i] == multiset[(i + r) % n];
  }
  return static_cast<double>(hits) / static_cast<double>(n * n);
}

/// Minimum of sum |c_i - m_perm(i)|^p over all permutations (vectors padded
/// with zeros to equal length).
inline long double brute_force_lp(Values c, Values m, unsigned p) {
  const std::size_t k = std::max(c.size(), m.size());
  c.resize(k, 0);
  m.resize(k, 0);
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  long double best = -1;
  do {
    long double cost = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const long double d =
          c[i] > m[perm[i]] ? c[i] - m[perm[i]] : m[perm[i]] - c[i];
      long double t = 1;
      for (unsigned e = 0; e < p; ++e) t *= d;
      cost += t;
    }
    if (best < 0 || cost < best) best = cost;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
