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
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eseds/client.hpp"
#include "eseds/shared_store.hpp"
#include "eseds/store.hpp"
#include "eseds/transport.hpp"
#include "oracles.hpp"

namespace harness {

using eseds::Plaintext;

// Fixed key so failures reproduce byte for byte.
inline eseds::SecretKey test_key(std::uint8_t fill = 0x42) {
  return eseds::SecretKey(std::vector<std::uint8_t>(32, fill));
}

/// Client wired to an in-process server.
struct Rig {
  eseds::SecretKey key;
  eseds::Domain dom;
  eseds::SharedStore shared;
  eseds::InProcessSession session;
  eseds::Client client;

  Rig(eseds::SecretKey k, eseds::Domain d, eseds::Store s, std::uint64_t seed,
      eseds::InsertStyle style)
      : key(k),
        dom(d),
        shared(std::move(s)),
        session(shared),
        client(key, dom, session, eseds::CoinSource(seed), style) {}

  std::vector<Plaintext> decrypted() {
    return shared.read([&](const eseds::Store& s) {
      std::vector<Plaintext> out;
      for (std::uint64_t j = 0; j < s.length(); ++j) {
        out.push_back(eseds::decrypt_tagged(key, s.get_cell(j)).value);
      }
      return out;
    });
  }
};

inline eseds::InsertStyle style_for(eseds::StoreMode mode) {
  return mode == eseds::StoreMode::kDense ? eseds::InsertStyle::kDense
                                          : eseds::InsertStyle::kDecoupled;
}

/// Store whose cells decrypt to exactly `cells` (which must be a rotation of
/// a sorted sequence). Ties rise from the rotation start.
inline std::unique_ptr<Rig> rig_from_cells(const std::vector<Plaintext>& cells,
                                           std::uint64_t domain_size,
                                           eseds::StoreMode mode =
                                               eseds::StoreMode::kDense,
                                           std::uint64_t seed = 7) {
  auto key = test_key();
  const eseds::Domain dom(domain_size);
  const std::size_t n = cells.size();
  std::vector<eseds::Ciphertext> enc(n);
  if (n > 0) {
    const std::uint64_t s = oracle::first_start(cells);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (s + i) % n;
      enc[j] = eseds::encrypt_tagged(key, {cells[j], i}, dom);
    }
  }
  if (mode == eseds::StoreMode::kDense) {
    return std::make_unique<Rig>(
        key, dom, eseds::Store(eseds::DenseStore::from_cells(enc, seed)), seed,
        eseds::InsertStyle::kDense);
  }
  const unsigned bits = 64;
  const eseds::SparseIndex step = eseds::sparse_domain_size(bits) / (n + 1);
  std::vector<eseds::DecoupledStore::Entry> entries;
  for (std::size_t j = 0; j < n; ++j) entries.emplace_back(step * (j + 1), enc[j]);
  return std::make_unique<Rig>(
      key, dom,
      eseds::Store(eseds::DecoupledStore::from_entries(bits, entries, seed)),
      seed, eseds::InsertStyle::kDecoupled);
}

inline eseds::Store empty_store(eseds::StoreMode mode, std::uint64_t seed,
                                unsigned sparse_bits) {
  return mode == eseds::StoreMode::kDense
             ? eseds::Store::dense(seed)
             : eseds::Store::decoupled(sparse_bits, seed);
}

struct InstanceResult {
  std::uint64_t queries = 0;
  std::uint64_t query_mismatches = 0;
  bool rotation_ok = true;
  std::string first_failure;
};

inline std::set<std::uint64_t> as_set(const eseds::RangeResult& r) {
  const auto v = r.indices();
  return {v.begin(), v.end()};
}

/// One seeded random instance: N <= 16, n <= 64, random insert order and
/// coins, then random queries (forced wrap and empty-result queries
/// included) compared with decrypt-and-filter. Decoupled instances use a
/// narrow sparse space so collisions happen, and interleave rebalance steps.
inline InstanceResult run_search_instance(std::uint64_t seed,
                                          eseds::StoreMode mode,
                                          std::uint64_t queries = 24) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  const std::uint64_t N = pick(1, 16);
  const std::uint64_t n = pick(0, 64);
  Rig rig(test_key(static_cast<std::uint8_t>(seed)), eseds::Domain(N),
          empty_store(mode, rng(), 16), rng(), style_for(mode));

  std::vector<Plaintext> inserted;
  for (std::uint64_t i = 0; i < n; ++i) {
    inserted.push_back(pick(0, N - 1));
    rig.client.insert(inserted.back());
    if (mode == eseds::StoreMode::kDecoupled && pick(0, 7) == 0) {
      rig.shared.write(
          [&](eseds::Store& s) { return s.rebalance_step(pick(1, 8)); });
    }
  }

  InstanceResult out;
  const auto cells = rig.decrypted();
  if (!oracle::is_rotation_of_sorted(cells, inserted)) {
    out.rotation_ok = false;
    out.first_failure = "seed " + std::to_string(seed) + ": not a sorted rotation";
  }

  std::vector<std::pair<Plaintext, Plaintext>> qs;
  for (std::uint64_t i = 0; i < queries; ++i) qs.emplace_back(pick(0, N - 1), pick(0, N - 1));
  if (N >= 2) {
    const Plaintext b = pick(0, N - 2);
    qs.emplace_back(pick(b + 1, N - 1), b);
  }
  const std::set<Plaintext> present(inserted.begin(), inserted.end());
  for (Plaintext v = 0; v < N; ++v) {
    if (!present.count(v)) {
      qs.emplace_back(v, v);
      break;
    }
  }

  for (const auto& [a, b] : qs) {
    ++out.queries;
    const auto got = as_set(rig.client.search_range({a, b}));
    if (got != oracle::filter(cells, a, b)) {
      ++out.query_mismatches;
      if (out.first_failure.empty()) {
        out.first_failure = "seed " + std::to_string(seed) + ": query [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]";
      }
    }
  }
  return out;
}

}  // namespace harness
