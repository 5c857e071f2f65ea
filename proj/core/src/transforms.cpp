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

#include "eseds/transforms.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "binary_io.hpp"
#include "eseds/client.hpp"
#include "eseds/shared_store.hpp"
#include "eseds/transport.hpp"

namespace eseds {

namespace {

const Domain kRowIdDomain(std::numeric_limits<std::uint64_t>::max());

// Input positions of each distinct value, ascending by value.
std::map<Plaintext, std::vector<std::uint64_t>> occurrences(
    const std::vector<Plaintext>& multiset) {
  std::map<Plaintext, std::vector<std::uint64_t>> out;
  for (std::uint64_t i = 0; i < multiset.size(); ++i) {
    out[multiset[i]].push_back(i);
  }
  return out;
}

// Writes the chain of one value: rows[0] at head, the rest at the given
// free slots in order.
void lay_chain(std::vector<ChainSlot>& table, const SecretKey& key,
               const Domain& dom, Plaintext m,
               const std::vector<std::uint64_t>& rows, std::uint64_t head,
               const std::vector<std::uint64_t>& tail) {
  std::uint64_t at = head;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table[at].keyword = encrypt(key, m, dom);
    table[at].row_id = encrypt(key, rows[i], kRowIdDomain);
    const std::int64_t next =
        i + 1 < rows.size() ? static_cast<std::int64_t>(tail[i]) : -1;
    table[at].next = next;
    if (next >= 0) at = static_cast<std::uint64_t>(next);
  }
}

std::vector<bool> heads_of(const std::vector<ChainSlot>& table) {
  std::vector<bool> head(table.size(), true);
  for (const auto& s : table) {
    if (s.next >= 0) head[static_cast<std::size_t>(s.next)] = false;
  }
  return head;
}

std::vector<std::uint64_t> chain_rows(const SecretKey& key,
                                      const std::vector<ChainSlot>& table,
                                      std::uint64_t head) {
  std::vector<std::uint64_t> rows;
  for (std::int64_t at = static_cast<std::int64_t>(head); at >= 0;
       at = table[static_cast<std::size_t>(at)].next) {
    if (rows.size() >= table.size()) {
      throw Error(ErrorCode::kFormat, "chain does not terminate");
    }
    rows.push_back(decrypt(key, table[static_cast<std::size_t>(at)].row_id));
  }
  return rows;
}

// Class id of every slot: the head slot of the chain it belongs to.
std::vector<std::uint64_t> chain_classes(const std::vector<ChainSlot>& table) {
  const auto head = heads_of(table);
  std::vector<std::uint64_t> cls(table.size());
  for (std::uint64_t h = 0; h < table.size(); ++h) {
    if (!head[h]) continue;
    for (std::int64_t at = static_cast<std::int64_t>(h); at >= 0;
         at = table[static_cast<std::size_t>(at)].next) {
      cls[static_cast<std::size_t>(at)] = h;
    }
  }
  return cls;
}

void save_chains(std::ostream& out, std::uint8_t mode,
                 const std::vector<ChainSlot>& table) {
  detail::put_header(out, {mode, 0, table.size()});
  for (const auto& s : table) {
    detail::put_ciphertext(out, s.keyword);
    detail::put_ciphertext(out, s.row_id);
    detail::put_le<std::uint64_t>(out, static_cast<std::uint64_t>(s.next));
  }
  if (!out) throw Error(ErrorCode::kFormat, "write to store sink failed");
}

void expect_mode(const detail::StoreHeader& h, std::uint8_t mode) {
  if (h.mode != mode) {
    throw Error(ErrorCode::kWrongMode,
                "file holds mode " + std::to_string(h.mode) + ", expected " +
                    std::to_string(mode));
  }
}

std::vector<ChainSlot> load_chains(std::istream& in, std::uint8_t mode) {
  const auto h = detail::get_header(in);
  expect_mode(h, mode);
  std::vector<ChainSlot> table;
  for (std::uint64_t i = 0; i < h.count; ++i) {
    ChainSlot s;
    s.keyword = detail::get_ciphertext(in);
    s.row_id = detail::get_ciphertext(in);
    s.next = static_cast<std::int64_t>(detail::get_le<std::uint64_t>(in));
    if (s.next < -1 || s.next >= static_cast<std::int64_t>(h.count)) {
      throw Error(ErrorCode::kFormat, "chain pointer out of range");
    }
    table.push_back(std::move(s));
  }
  detail::expect_eof(in);
  return table;
}

}  // namespace

DetEseds build_det(const SecretKey& key, const Domain& dom,
                   const std::vector<Plaintext>& multiset) {
  const std::uint64_t n = multiset.size();
  const auto occ = occurrences(multiset);
  std::vector<bool> used(n, false);
  std::vector<std::pair<std::uint64_t, Plaintext>> heads;
  for (const auto& [m, rows] : occ) {
    std::uint64_t slot = prf(key, m, n);
    while (used[slot]) slot = slot + 1 == n ? 0 : slot + 1;
    used[slot] = true;
    heads.emplace_back(slot, m);
  }
  // Duplicates go to free slots in head-slot order, so their placement
  // carries no more order information than the PRF does.
  std::sort(heads.begin(), heads.end());
  DetEseds out;
  out.table.resize(n);
  std::uint64_t free_cursor = 0;
  for (const auto& [slot, m] : heads) {
    const auto& rows = occ.at(m);
    std::vector<std::uint64_t> tail;
    while (tail.size() + 1 < rows.size()) {
      while (used[free_cursor]) ++free_cursor;
      used[free_cursor] = true;
      tail.push_back(free_cursor);
    }
    lay_chain(out.table, key, dom, m, rows, slot, tail);
  }
  return out;
}

std::vector<std::uint64_t> DetEseds::lookup(const SecretKey& key,
                                            Plaintext m) const {
  const std::uint64_t n = table.size();
  if (n == 0) return {};
  const auto head = heads_of(table);
  std::uint64_t slot = prf(key, m, n);
  // Probing passes only heads; the first non-head slot was free when m's
  // head would have been placed.
  for (std::uint64_t i = 0; i < n && head[slot]; ++i) {
    if (decrypt(key, table[slot].keyword) == m) {
      return chain_rows(key, table, slot);
    }
    slot = slot + 1 == n ? 0 : slot + 1;
  }
  return {};
}

OpeEseds build_ope(const SecretKey& key, const Domain& dom,
                   const std::vector<Plaintext>& multiset) {
  const auto occ = occurrences(multiset);
  OpeEseds out;
  out.cells.resize(multiset.size());
  std::uint64_t head = 0;
  std::uint64_t free_cursor = occ.size();
  for (const auto& [m, rows] : occ) {
    std::vector<std::uint64_t> tail;
    while (tail.size() + 1 < rows.size()) tail.push_back(free_cursor++);
    lay_chain(out.cells, key, dom, m, rows, head++, tail);
  }
  return out;
}

std::vector<std::uint64_t> OpeEseds::lookup(const SecretKey& key,
                                            Plaintext m) const {
  const auto head = heads_of(cells);
  for (std::uint64_t j = 0; j < cells.size() && head[j]; ++j) {
    if (decrypt(key, cells[j].keyword) == m) return chain_rows(key, cells, j);
  }
  return {};
}

FhopeEseds build_fhope(const SecretKey& key, const Domain& dom,
                       const std::vector<Plaintext>& multiset,
                       CoinSource& coins) {
  std::vector<TaggedPlaintext> order;
  order.reserve(multiset.size());
  for (Plaintext m : multiset) {
    dom.check(m);
    order.push_back({m, coins.bits()});
  }
  std::sort(order.begin(), order.end());
  FhopeEseds out;
  out.cells.reserve(order.size());
  for (const auto& t : order) out.cells.push_back(encrypt(key, t.value, dom));
  return out;
}

Store build_eseds(const SecretKey& key, const Domain& dom,
                  const std::vector<Plaintext>& multiset, CoinSource& coins,
                  std::uint64_t rotation_seed, StoreMode mode) {
  SharedStore shared(mode == StoreMode::kDense
                         ? Store::dense(rotation_seed)
                         : Store::decoupled(kMaxSparseBits, rotation_seed));
  InProcessSession session(shared);
  Client client(key, dom, session, CoinSource(coins.bits()),
                mode == StoreMode::kDense ? InsertStyle::kDense
                                          : InsertStyle::kDecoupled);
  for (Plaintext m : multiset) client.insert(m);
  return shared.write([](Store& s) { return std::move(s); });
}

LeakageView leakage_view(const DetEseds& s) {
  const auto cls = chain_classes(s.table);
  LeakageView view(s.table.size());
  for (std::uint64_t j = 0; j < view.size(); ++j) {
    view[j].position = j;
    view[j].equality_class = cls[j];
  }
  return view;
}

LeakageView leakage_view(const OpeEseds& s) {
  const auto cls = chain_classes(s.cells);
  LeakageView view(s.cells.size());
  for (std::uint64_t j = 0; j < view.size(); ++j) {
    view[j].position = j;
    view[j].equality_class = cls[j];
    view[j].order_rank = cls[j];
  }
  return view;
}

LeakageView leakage_view(const FhopeEseds& s) {
  LeakageView view(s.cells.size());
  for (std::uint64_t j = 0; j < view.size(); ++j) {
    view[j].position = j;
    view[j].order_rank = j;
  }
  return view;
}

LeakageView leakage_view(const Store& s) {
  LeakageView view(s.length());
  for (std::uint64_t j = 0; j < view.size(); ++j) view[j].position = j;
  return view;
}

std::vector<Plaintext> plaintexts(const SecretKey& key, const DetEseds& s) {
  std::vector<Plaintext> out;
  for (const auto& slot : s.table) out.push_back(decrypt(key, slot.keyword));
  return out;
}

std::vector<Plaintext> plaintexts(const SecretKey& key, const OpeEseds& s) {
  std::vector<Plaintext> out;
  for (const auto& slot : s.cells) out.push_back(decrypt(key, slot.keyword));
  return out;
}

std::vector<Plaintext> plaintexts(const SecretKey& key, const FhopeEseds& s) {
  std::vector<Plaintext> out;
  for (const auto& c : s.cells) out.push_back(decrypt(key, c));
  return out;
}

std::vector<Plaintext> plaintexts(const SecretKey& key, const Store& s) {
  std::vector<Plaintext> out;
  for (std::uint64_t j = 0; j < s.length(); ++j) {
    out.push_back(decrypt_tagged(key, s.get_cell(j)).value);
  }
  return out;
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::kMainEseds:
      return "main_eseds";
    case Target::kFhope:
      return "fhope";
    case Target::kOpe:
      return "ope";
    case Target::kDet:
      return "det";
  }
  return "?";
}

Target parse_target(std::string_view name) {
  for (Target t : {Target::kMainEseds, Target::kFhope, Target::kOpe, Target::kDet}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown target '" + std::string(name) +
                  "' (main_eseds, fhope, ope, det)");
}

Snapshot build_snapshot(Target target, const SecretKey& key, const Domain& dom,
                        const std::vector<Plaintext>& multiset,
                        CoinSource& coins) {
  switch (target) {
    case Target::kMainEseds: {
      const Store s = build_eseds(key, dom, multiset, coins, coins.bits());
      return {leakage_view(s), plaintexts(key, s)};
    }
    case Target::kFhope: {
      const auto s = build_fhope(key, dom, multiset, coins);
      return {leakage_view(s), plaintexts(key, s)};
    }
    case Target::kOpe: {
      const auto s = build_ope(key, dom, multiset);
      return {leakage_view(s), plaintexts(key, s)};
    }
    case Target::kDet: {
      const auto s = build_det(key, dom, multiset);
      return {leakage_view(s), plaintexts(key, s)};
    }
  }
  throw Error(ErrorCode::kInternal, "unhandled target");
}

void DetEseds::save(std::ostream& out) const { save_chains(out, kModeDet, table); }

DetEseds DetEseds::load(std::istream& in) {
  return DetEseds{load_chains(in, kModeDet)};
}

void OpeEseds::save(std::ostream& out) const { save_chains(out, kModeOpe, cells); }

OpeEseds OpeEseds::load(std::istream& in) {
  return OpeEseds{load_chains(in, kModeOpe)};
}

void FhopeEseds::save(std::ostream& out) const {
  detail::put_header(out, {kModeFhope, 0, cells.size()});
  for (const auto& c : cells) detail::put_ciphertext(out, c);
  if (!out) throw Error(ErrorCode::kFormat, "write to store sink failed");
}

FhopeEseds FhopeEseds::load(std::istream& in) {
  const auto h = detail::get_header(in);
  expect_mode(h, kModeFhope);
  FhopeEseds out;
  for (std::uint64_t i = 0; i < h.count; ++i) {
    out.cells.push_back(detail::get_ciphertext(in));
  }
  detail::expect_eof(in);
  return out;
}

}  // namespace eseds
