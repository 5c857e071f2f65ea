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

#include <string>

#include "eseds/error.hpp"
#include "eseds/store.hpp"

namespace eseds {

DenseStore::DenseStore(std::uint64_t seed) : rng_(seed) {}

DenseStore DenseStore::from_cells(std::vector<Ciphertext> cells,
                                  std::uint64_t seed) {
  DenseStore s(seed);
  s.physical_ = std::move(cells);
  return s;
}

const Ciphertext& DenseStore::get_cell(std::uint64_t j) const {
  const std::uint64_t n = size();
  if (j >= n) {
    throw Error(ErrorCode::kOutOfRange, "cell index " + std::to_string(j) +
                                            " out of range for n=" +
                                            std::to_string(n));
  }
  const std::uint64_t p = offset_ + j;
  return physical_[p >= n ? p - n : p];
}

std::uint64_t DenseStore::insert_at(std::uint64_t l, Ciphertext c) {
  const std::uint64_t n = size() + 1;
  const std::uint64_t s =
      std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_);
  insert_at(l, std::move(c), s);
  return s;
}

void DenseStore::insert_at(std::uint64_t l, Ciphertext c, std::uint64_t s) {
  const std::uint64_t n = size();
  if (l > n) {
    throw Error(ErrorCode::kOutOfRange, "insert position " + std::to_string(l) +
                                            " out of range for n=" +
                                            std::to_string(n));
  }
  if (n == 0) {
    physical_.push_back(std::move(c));
    offset_ = 0;
    return;
  }
  // Logical l sits at physical (offset + l) mod n. When that wraps below the
  // offset (or l == n), the logical start moves one slot to the right.
  const std::uint64_t p = offset_ + l;
  const bool wraps = p >= n;
  physical_.insert(physical_.begin() + static_cast<std::ptrdiff_t>(wraps ? p - n : p),
                   std::move(c));
  if (wraps) ++offset_;
  rotate(s);
}

void DenseStore::rotate(std::uint64_t s) {
  const std::uint64_t n = size();
  if (n == 0) return;
  offset_ = (offset_ + s % n) % n;
}

std::vector<Ciphertext> DenseStore::cells() const {
  std::vector<Ciphertext> out;
  out.reserve(physical_.size());
  for (std::uint64_t j = 0; j < size(); ++j) out.push_back(get_cell(j));
  return out;
}

}  // namespace eseds
