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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "eseds/cipher.hpp"
#include "eseds/coins.hpp"
#include "eseds/shared_store.hpp"
#include "eseds/stats.hpp"

namespace eseds {

// Synthetic query benchmark on an embedded dense store.

struct BenchConfig {
  std::vector<std::uint64_t> db_sizes = {100000, 200000, 300000, 400000, 500000,
                                         600000, 700000, 800000, 900000, 1000000};
  /// Matching cells per range query.
  std::vector<std::uint64_t> range_sizes = {10, 20, 30, 40, 50,
                                            60, 70, 80, 90, 100};
  std::vector<std::uint64_t> k_values = {100, 200, 300, 400, 500,
                                         600, 700, 800, 900, 1000};
  std::uint64_t repeats = 30;
  /// Leading repetitions discarded.
  std::uint64_t warmup = 10;
  /// Queries timed together as one repetition.
  std::uint64_t queries_per_repeat = 50;
  std::uint64_t seed = 1;
  unsigned domain_bits = 32;
};

/// n distinct uniform plaintexts, encrypted and rotated, ready to query.
struct BenchStore {
  SecretKey key;
  Domain domain;
  std::vector<Plaintext> sorted;
  std::unique_ptr<SharedStore> store;
};

BenchStore load_bench_store(std::uint64_t n, unsigned domain_bits,
                            CoinSource& coins);

struct BenchRow {
  /// "range" or "topk".
  std::string kind;
  std::uint64_t n = 0;
  /// Range size or k.
  std::uint64_t param = 0;
  /// Per-query wall-clock milliseconds over the kept repetitions.
  stats::Summary encrypted_ms;
  stats::Summary plaintext_ms;
  double get_cells_per_query = 0;
  std::uint64_t max_get_cells = 0;
};

/// Rows in (n, kind, param) order. progress, when set, gets each row as it
/// completes.
std::vector<BenchRow> run_bench(
    const BenchConfig& cfg,
    const std::function<void(const BenchRow&)>& progress = {});

}  // namespace eseds
