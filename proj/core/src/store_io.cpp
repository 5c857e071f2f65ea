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

#include <fstream>

#include "binary_io.hpp"
#include "eseds/store.hpp"

namespace eseds {

using detail::get_ciphertext;
using detail::get_le;
using detail::put_ciphertext;
using detail::put_le;

void Store::save(std::ostream& out) const {
  if (mode() == StoreMode::kDense) {
    const auto& s = as_dense();
    detail::put_header(out, {static_cast<std::uint8_t>(StoreMode::kDense), 0,
                             s.size()});
    for (std::uint64_t j = 0; j < s.size(); ++j) put_ciphertext(out, s.get_cell(j));
  } else {
    const DecoupledStore* s = &as_decoupled();
    // A half-finished pass has non-monotone indices; persist its end state.
    DecoupledStore finished;
    if (s->cursor().active) {
      finished = *s;
      finished.rebalance_full();
      s = &finished;
    }
    const unsigned bits = s->domain_bits();
    detail::put_header(out, {static_cast<std::uint8_t>(StoreMode::kDecoupled),
                             static_cast<std::uint16_t>(bits), s->size()});
    for (const auto& [index, cell] : s->entries()) {
      detail::put_bytes(out, sparse_to_bytes(index, bits));
      put_ciphertext(out, cell);
    }
  }
  if (!out) throw Error(ErrorCode::kFormat, "write to store sink failed");
}

Store Store::load(std::istream& in, std::uint64_t seed) {
  const auto h = detail::get_header(in);
  if (h.mode == static_cast<std::uint8_t>(StoreMode::kDense)) {
    std::vector<Ciphertext> cells;
    for (std::uint64_t i = 0; i < h.count; ++i) cells.push_back(get_ciphertext(in));
    detail::expect_eof(in);
    return Store(DenseStore::from_cells(std::move(cells), seed));
  }
  if (h.mode == static_cast<std::uint8_t>(StoreMode::kDecoupled)) {
    sparse_domain_size(h.domain_bits);  // validates the width
    std::vector<DecoupledStore::Entry> entries;
    for (std::uint64_t i = 0; i < h.count; ++i) {
      auto raw = detail::get_bytes(in, h.domain_bits / 8);
      SparseIndex index = sparse_from_bytes(raw);
      entries.emplace_back(std::move(index), get_ciphertext(in));
    }
    detail::expect_eof(in);
    return Store(
        DecoupledStore::from_entries(h.domain_bits, std::move(entries), seed));
  }
  throw Error(ErrorCode::kWrongMode,
              "store file mode " + std::to_string(h.mode) +
                  " is not a dense or decoupled store");
}

void Store::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFormat, "cannot open " + path.string());
  save(out);
}

Store Store::load_file(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormat, "cannot open " + path.string());
  return load(in, seed);
}

}  // namespace eseds
