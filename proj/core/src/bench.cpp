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

#include "eseds/bench.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "eseds/client.hpp"
#include "eseds/error.hpp"
#include "eseds/transport.hpp"

namespace eseds {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the optimizer from discarding baseline work.
volatile std::uint64_t g_sink = 0;

double ms_since(Clock::time_point t0, std::uint64_t queries) {
  const std::chrono::duration<double, std::milli> d = Clock::now() - t0;
  return d.count() / static_cast<double>(queries);
}

// Times body(q) for repeats batches of queries and keeps the tail.
template <typename Body>
stats::Summary time_batches(const BenchConfig& cfg, Body body) {
  std::vector<double> kept;
  for (std::uint64_t rep = 0; rep < cfg.repeats; ++rep) {
    const auto t0 = Clock::now();
    for (std::uint64_t q = 0; q < cfg.queries_per_repeat; ++q) {
      body(rep * cfg.queries_per_repeat + q);
    }
    const double ms = ms_since(t0, cfg.queries_per_repeat);
    if (rep >= cfg.warmup) kept.push_back(ms);
  }
  return stats::summarize(kept);
}

}  // namespace

BenchStore load_bench_store(std::uint64_t n, unsigned domain_bits,
                            CoinSource& coins) {
  const Domain dom = Domain::with_bits(domain_bits);
  if (n > dom.size() / 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "domain too small for " + std::to_string(n) +
                    " distinct plaintexts");
  }
  std::unordered_set<Plaintext> seen;
  seen.reserve(n);
  std::vector<Plaintext> values;
  values.reserve(n);
  while (values.size() < n) {
    const Plaintext m = coins.uniform(dom.size());
    if (seen.insert(m).second) values.push_back(m);
  }
  std::sort(values.begin(), values.end());

  SecretKey key = keygen(256);
  std::vector<Ciphertext> cells;
  cells.reserve(n);
  for (Plaintext m : values) cells.push_back(encrypt_tagged(key, {m, coins.bits()}, dom));
  auto dense = DenseStore::from_cells(std::move(cells), coins.bits());
  dense.rotate(coins.uniform(std::max<std::uint64_t>(n, 1)));
  return BenchStore{std::move(key), dom, std::move(values),
                    std::make_unique<SharedStore>(Store(std::move(dense)))};
}

std::vector<BenchRow> run_bench(
    const BenchConfig& cfg,
    const std::function<void(const BenchRow&)>& progress) {
  if (cfg.repeats <= cfg.warmup) {
    throw Error(ErrorCode::kInvalidArgument, "repeats must exceed warmup");
  }
  if (cfg.queries_per_repeat == 0) {
    throw Error(ErrorCode::kInvalidArgument, "queries_per_repeat must be >= 1");
  }
  CoinSource coins(cfg.seed);
  std::vector<BenchRow> rows;
  auto emit = [&](BenchRow row) {
    if (progress) progress(row);
    rows.push_back(std::move(row));
  };

  for (std::uint64_t n : cfg.db_sizes) {
    BenchStore bs = load_bench_store(n, cfg.domain_bits, coins);
    InProcessSession session(*bs.store);
    Client client(bs.key, bs.domain, session, CoinSource(coins.bits()));

    for (std::uint64_t r : cfg.range_sizes) {
      if (r == 0 || r > n) continue;
      // Pre-drawn query starts so both timings see the same queries.
      const std::uint64_t total = cfg.repeats * cfg.queries_per_repeat;
      std::vector<std::uint64_t> starts(total);
      for (auto& s : starts) s = coins.uniform(n - r + 1);

      BenchRow row;
      row.kind = "range";
      row.n = n;
      row.param = r;
      std::uint64_t fetched = 0;
      row.encrypted_ms = time_batches(cfg, [&](std::uint64_t q) {
        const RangeQuery query{bs.sorted[starts[q]], bs.sorted[starts[q] + r - 1]};
        const std::uint64_t before = session.stats().cells_fetched;
        const RangeResult res = client.search_range(query);
        const std::uint64_t probes = session.stats().cells_fetched - before;
        row.max_get_cells = std::max(row.max_get_cells, probes);
        fetched += probes;
        g_sink = g_sink + client.fetch(res).size();
      });
      row.get_cells_per_query =
          static_cast<double>(fetched) / static_cast<double>(total);
      row.plaintext_ms = time_batches(cfg, [&](std::uint64_t q) {
        const Plaintext a = bs.sorted[starts[q]];
        const Plaintext b = bs.sorted[starts[q] + r - 1];
        auto lo = std::lower_bound(bs.sorted.begin(), bs.sorted.end(), a);
        auto hi = std::upper_bound(lo, bs.sorted.end(), b);
        std::vector<Plaintext> out(lo, hi);
        g_sink = g_sink + out.size();
      });
      emit(std::move(row));
    }

    for (std::uint64_t k : cfg.k_values) {
      if (k == 0 || k > n) continue;
      BenchRow row;
      row.kind = "topk";
      row.n = n;
      row.param = k;
      std::uint64_t fetched = 0;
      const std::uint64_t total = cfg.repeats * cfg.queries_per_repeat;
      row.encrypted_ms = time_batches(cfg, [&](std::uint64_t) {
        const std::uint64_t before = session.stats().cells_fetched;
        g_sink = g_sink + client.top_k(k).size();
        const std::uint64_t probes = session.stats().cells_fetched - before;
        row.max_get_cells = std::max(row.max_get_cells, probes);
        fetched += probes;
      });
      row.get_cells_per_query =
          static_cast<double>(fetched) / static_cast<double>(total);
      row.plaintext_ms = time_batches(cfg, [&](std::uint64_t) {
        std::vector<Plaintext> out(bs.sorted.begin(),
                                   bs.sorted.begin() + static_cast<std::ptrdiff_t>(k));
        g_sink = g_sink + out.size();
      });
      emit(std::move(row));
    }
  }
  return rows;
}

}  // namespace eseds
