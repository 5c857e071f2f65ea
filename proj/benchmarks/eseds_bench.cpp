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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "eseds/bench.hpp"
#include "eseds/client.hpp"
#include "eseds/transport.hpp"

namespace {

using namespace eseds;

constexpr unsigned kDomainBits = 32;

// One cached store per size; building 2^20 cells dominates otherwise.
BenchStore& store_of(std::uint64_t n) {
  static std::vector<std::pair<std::uint64_t, BenchStore>> cache;
  for (auto& [size, bs] : cache) {
    if (size == n) return bs;
  }
  CoinSource coins(n);
  cache.emplace_back(n, load_bench_store(n, kDomainBits, coins));
  return cache.back().second;
}

void BM_SearchRange(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto r = static_cast<std::uint64_t>(state.range(1));
  BenchStore& bs = store_of(n);
  InProcessSession session(*bs.store);
  Client client(bs.key, bs.domain, session, CoinSource(3));
  CoinSource pick(5);
  for (auto _ : state) {
    const std::uint64_t s = pick.uniform(n - r + 1);
    const RangeResult res = client.search_range({bs.sorted[s], bs.sorted[s + r - 1]});
    benchmark::DoNotOptimize(res);
  }
  state.counters["get_cell"] = benchmark::Counter(
      static_cast<double>(session.stats().cells_fetched), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SearchRange)
    ->ArgsProduct({{1 << 10, 1 << 14, 1 << 17, 1 << 20}, {10, 100}})
    ->Unit(benchmark::kMicrosecond);

void BM_TopK(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  BenchStore& bs = store_of(1 << 17);
  InProcessSession session(*bs.store);
  Client client(bs.key, bs.domain, session, CoinSource(3));
  for (auto _ : state) benchmark::DoNotOptimize(client.top_k(k));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TopK)->RangeMultiplier(2)->Range(64, 4096)->Complexity()->Unit(
    benchmark::kMicrosecond);

// Dense inserts shift O(n) cells; decoupled inserts are O(log n).
template <StoreMode kMode>
void BM_Insert(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const Domain dom = Domain::with_bits(kDomainBits);
  SecretKey key = keygen(256);
  CoinSource coins(9);
  SharedStore shared(kMode == StoreMode::kDense ? Store::dense(1) : Store::decoupled(128, 1));
  InProcessSession session(shared);
  Client client(key, dom, session, CoinSource(11),
                kMode == StoreMode::kDense ? InsertStyle::kDense : InsertStyle::kDecoupled);
  for (std::uint64_t i = 0; i < n; ++i) client.insert(coins.uniform(dom.size()));
  for (auto _ : state) client.insert(coins.uniform(dom.size()));
}
BENCHMARK(BM_Insert<StoreMode::kDense>)
    ->Name("BM_InsertDense")
    ->Arg(1 << 10)
    ->Arg(1 << 14)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Insert<StoreMode::kDecoupled>)
    ->Name("BM_InsertDecoupled")
    ->Arg(1 << 10)
    ->Arg(1 << 14)
    ->Unit(benchmark::kMicrosecond);

void BM_RebalancePass(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const Domain dom = Domain::with_bits(kDomainBits);
  SecretKey key = keygen(256);
  CoinSource coins(13);
  SharedStore shared(Store::decoupled(128, 1));
  InProcessSession session(shared);
  Client client(key, dom, session, CoinSource(15), InsertStyle::kDecoupled);
  for (std::uint64_t i = 0; i < n; ++i) client.insert(coins.uniform(dom.size()));
  for (auto _ : state) {
    shared.write([](Store& s) { s.rebalance_step(0); return 0; });
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_RebalancePass)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
