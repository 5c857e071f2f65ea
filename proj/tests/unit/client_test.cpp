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
#include <vector>

#include "eseds/client.hpp"
#include "eseds/stats.hpp"
#include "support/errors.hpp"
#include "support/harness.hpp"

namespace eseds {
namespace {

using harness::code_of;
using harness::rig_from_cells;
using Segments = std::vector<IndexRange>;

class ClientModes : public ::testing::TestWithParam<StoreMode> {};

TEST_P(ClientModes, JminExamples) {
  EXPECT_EQ(rig_from_cells({3, 7, 1, 3}, 8, GetParam())->client.find_jmin(3), 3u);
  EXPECT_EQ(rig_from_cells({5}, 8, GetParam())->client.find_jmin(5), 0u);
  EXPECT_EQ(rig_from_cells({2, 2, 2}, 8, GetParam())->client.find_jmin(2), 0u);
}

TEST_P(ClientModes, JmaxExamples) {
  EXPECT_EQ(rig_from_cells({3, 7, 1, 3}, 8, GetParam())->client.find_jmax(3), 0u);
  EXPECT_EQ(rig_from_cells({5}, 8, GetParam())->client.find_jmax(5), 0u);
  EXPECT_EQ(rig_from_cells({1, 3, 3, 7}, 8, GetParam())->client.find_jmax(3), 2u);
  EXPECT_EQ(rig_from_cells({2, 2, 2}, 8, GetParam())->client.find_jmax(2), 2u);
}

TEST_P(ClientModes, SearchExamples) {
  auto r = rig_from_cells({3, 7, 1, 3}, 8, GetParam());
  EXPECT_EQ(r->client.search_range({3, 3}).segments, (Segments{{0, 0}, {3, 3}}));
  EXPECT_TRUE(r->client.search_range({4, 6}).empty());
  auto s = rig_from_cells({1, 3, 3, 7}, 8, GetParam());
  EXPECT_EQ(s->client.search_range({0, 7}).segments, (Segments{{0, 3}}));
}

TEST_P(ClientModes, RotationAndTopK) {
  auto r = rig_from_cells({3, 7, 1, 3}, 8, GetParam());
  EXPECT_EQ(r->client.find_rotation(), 2u);
  EXPECT_EQ(r->client.top_k(2), (std::vector<Plaintext>{1, 3}));
  auto s = rig_from_cells({1, 3, 3, 7}, 8, GetParam());
  EXPECT_EQ(s->client.find_rotation(), 0u);
  EXPECT_EQ(code_of([&] { s->client.top_k(5); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { s->client.top_k(0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(rig_from_cells({5}, 8, GetParam())->client.top_k(1), std::vector<Plaintext>{5});
  EXPECT_EQ(rig_from_cells({2, 2, 2}, 8, GetParam())->client.find_rotation(), 0u);
}

TEST_P(ClientModes, EmptyStore) {
  auto r = rig_from_cells({}, 8, GetParam());
  EXPECT_EQ(code_of([&] { r->client.find_jmin(1); }), ErrorCode::kEmptyStore);
  EXPECT_EQ(code_of([&] { r->client.find_jmax(1); }), ErrorCode::kEmptyStore);
  EXPECT_EQ(code_of([&] { r->client.top_k(1); }), ErrorCode::kEmptyStore);
  EXPECT_TRUE(r->client.search_range({0, 7}).empty());
  EXPECT_EQ(r->client.insert(4), 1u);
  EXPECT_EQ(r->decrypted(), std::vector<Plaintext>{4});
}

TEST_P(ClientModes, InsertJoinsRun) {
  auto r = rig_from_cells({3, 7, 1, 3}, 8, GetParam());
  r->client.insert(3);
  EXPECT_TRUE(oracle::is_rotation_of_sorted(r->decrypted(), {1, 3, 3, 3, 7}));
  EXPECT_EQ(code_of([&] { r->client.insert(8); }), ErrorCode::kOutOfDomain);
}

// Every insert order of {1,3,3,7} under many coin seeds yields a rotation.
TEST_P(ClientModes, InsertOrdersAndCoins) {
  std::vector<Plaintext> order = {1, 3, 3, 7};
  do {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      harness::Rig rig(harness::test_key(), Domain(8),
                       harness::empty_store(GetParam(), seed, 16), seed,
                       harness::style_for(GetParam()));
      for (Plaintext m : order) rig.client.insert(m);
      ASSERT_TRUE(oracle::is_rotation_of_sorted(rig.decrypted(), order));
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_P(ClientModes, LinearScanOracles) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    const std::uint64_t N = 1 + rng() % 12;
    const std::uint64_t n = 1 + rng() % 30;
    harness::Rig rig(harness::test_key(), Domain(N),
                     harness::empty_store(GetParam(), seed, 16), seed,
                     harness::style_for(GetParam()));
    std::vector<Plaintext> ins;
    for (std::uint64_t i = 0; i < n; ++i) {
      ins.push_back(rng() % N);
      rig.client.insert(ins.back());
    }
    const auto cells = rig.decrypted();
    for (Plaintext v = 0; v < N; ++v) {
      ASSERT_EQ(rig.client.find_jmin(v), oracle::jmin(cells, v)) << seed << " " << v;
      ASSERT_EQ(rig.client.find_jmax(v), oracle::jmax(cells, v)) << seed << " " << v;
    }
    const std::uint64_t k = 1 + rng() % n;
    ASSERT_EQ(rig.client.top_k(k), oracle::smallest(ins, k));
    const auto starts = oracle::sorted_starts(cells);
    ASSERT_NE(std::find(starts.begin(), starts.end(), rig.client.find_rotation()),
              starts.end());
  }
}

TEST_P(ClientModes, RandomInstancesMatchFilter) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = harness::run_search_instance(seed, GetParam());
    ASSERT_TRUE(r.rotation_ok) << r.first_failure;
    ASSERT_EQ(r.query_mismatches, 0u) << r.first_failure;
  }
}

TEST_P(ClientModes, FetchDecryptsSegments) {
  auto r = rig_from_cells({3, 7, 1, 3}, 8, GetParam());
  EXPECT_EQ(r->client.fetch(r->client.search_range({3, 3})),
            (std::vector<Plaintext>{3, 3}));
  EXPECT_EQ(r->client.fetch(r->client.search_range({7, 1})),
            (std::vector<Plaintext>{7, 1}));
}

INSTANTIATE_TEST_SUITE_P(Modes, ClientModes,
                         ::testing::Values(StoreMode::kDense, StoreMode::kDecoupled),
                         [](const auto& info) {
                           return info.param == StoreMode::kDense ? "Dense" : "Decoupled";
                         });

std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

TEST(ClientBounds, GetCellCounts) {
  for (std::uint64_t n : {1u, 2u, 3u, 17u, 100u, 1000u}) {
    std::vector<Plaintext> cells(n);
    for (std::uint64_t i = 0; i < n; ++i) cells[i] = (i + n / 3) % n;
    auto r = rig_from_cells(cells, 1 << 16);
    CoinSource q(n);
    for (int i = 0; i < 20; ++i) {
      r->session.reset_stats();
      r->client.search_range({q.uniform(n), q.uniform(n)});
      EXPECT_LE(r->session.stats().cells_fetched, 1 + 2 * ceil_log2(n));
    }
    r->session.reset_stats();
    r->client.insert(q.uniform(n));
    EXPECT_LE(r->session.stats().cells_fetched, 1 + ceil_log2(n));
  }
}

// The tie component is uniform: among equal plaintexts the last insert
// lands at each relative position equally often.
TEST(ClientTies, UniformAmongDuplicates) {
  std::vector<std::uint64_t> counts(4);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    harness::Rig rig(harness::test_key(), Domain(8), Store::dense(seed), seed,
                     InsertStyle::kDense);
    for (int i = 0; i < 3; ++i) rig.client.insert(5);
    const auto before = rig.shared.read([](const Store& s) {
      std::vector<Ciphertext> out;
      for (std::uint64_t j = 0; j < s.length(); ++j) out.push_back(s.get_cell(j));
      return out;
    });
    rig.client.insert(5);
    std::vector<std::uint64_t> ties;
    std::uint64_t fresh = 0;
    rig.shared.read([&](const Store& s) {
      for (std::uint64_t j = 0; j < 4; ++j) {
        const auto t = decrypt_tagged(rig.key, s.get_cell(j)).tie;
        ties.push_back(t);
        if (std::find(before.begin(), before.end(), s.get_cell(j)) == before.end()) fresh = t;
      }
      return 0;
    });
    std::sort(ties.begin(), ties.end());
    ++counts[std::find(ties.begin(), ties.end(), fresh) - ties.begin()];
  }
  EXPECT_GT(stats::chi_square_uniform(counts).p_value, 0.001);
}

}  // namespace
}  // namespace eseds
