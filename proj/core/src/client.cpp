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

#include "eseds/client.hpp"

#include <string>
#include <unordered_map>

#include "eseds/store.hpp"

namespace eseds {

std::uint64_t RangeResult::count() const {
  std::uint64_t total = 0;
  for (const auto& s : segments) total += s.hi - s.lo + 1;
  return total;
}

bool RangeResult::contains(std::uint64_t j) const {
  for (const auto& s : segments) {
    if (s.lo <= j && j <= s.hi) return true;
  }
  return false;
}

std::vector<std::uint64_t> RangeResult::indices() const {
  std::vector<std::uint64_t> out;
  for (const auto& s : segments) {
    for (std::uint64_t j = s.lo; j <= s.hi; ++j) out.push_back(j);
  }
  return out;
}

// Cell reads for one protocol run. Each index is fetched and decrypted at
// most once, and positions are measured relative to C[0]'s point.
class Client::Probe {
 public:
  Probe(Client& c, std::uint64_t n) : c_(c), n_(n) {
    if (n_ > 0) anchor_ = TaggedDomain::point(cell(0));
  }

  std::uint64_t n() const { return n_; }

  const TaggedPlaintext& cell(std::uint64_t j) {
    auto it = cache_.find(j);
    if (it == cache_.end()) {
      it = cache_
               .emplace(j, decrypt_tagged(c_.key_, c_.session_.get_cell(j)))
               .first;
    }
    return it->second;
  }

  u128 rel(u128 point) const { return c_.tagged_.offset(point, anchor_); }
  u128 rel_of(std::uint64_t j) { return rel(TaggedDomain::point(cell(j))); }

  // First j in 1..n with rel(C[j]) >= x (n when none); rel(C[0]) is 0, the
  // minimum, so x = 0 maps to 0.
  std::uint64_t lower(u128 x) {
    if (x == 0) return 0;
    return search([&](std::uint64_t j) { return rel_of(j) < x; });
  }
  // First j in 1..n with rel(C[j]) > x (n when none).
  std::uint64_t upper(u128 x) {
    return search([&](std::uint64_t j) { return rel_of(j) <= x; });
  }

 private:
  template <typename Before>
  std::uint64_t search(Before before) {
    std::uint64_t lo = 1;
    std::uint64_t hi = n_;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (before(mid)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  Client& c_;
  std::uint64_t n_;
  u128 anchor_ = 0;
  std::unordered_map<std::uint64_t, TaggedPlaintext> cache_;
};

Client::Client(SecretKey key, Domain dom, Session& session, CoinSource coins,
               InsertStyle style)
    : key_(std::move(key)),
      dom_(dom),
      tagged_(dom),
      session_(session),
      coins_(std::move(coins)),
      style_(style) {}

std::uint64_t Client::insert(Plaintext m) {
  dom_.check(m);
  const TaggedPlaintext t{m, coins_.bits()};
  const Ciphertext c = encrypt_tagged(key_, t, dom_);
  const std::uint64_t n = session_.length();

  std::uint64_t slot = 0;
  if (n > 0) {
    Probe probe(*this, n);
    slot = probe.lower(probe.rel(TaggedDomain::point(t)));
    if (slot == 0) slot = n;  // only on an exact point clash with C[0]
  }
  if (style_ == InsertStyle::kDense) {
    session_.insert_at(slot, c);
  } else {
    const std::uint64_t left = slot == 0 ? kSentinel : slot - 1;
    const std::uint64_t right = slot == n ? kSentinel : slot;
    last_sparse_ = session_.insert_between(left, right, c);
  }
  return n + 1;
}

std::uint64_t Client::find_jmin(Plaintext a) {
  dom_.check(a);
  Probe probe(*this, session_.length());
  const std::uint64_t n = probe.n();
  if (n == 0) throw Error(ErrorCode::kEmptyStore, "find_jmin on an empty store");
  std::uint64_t j = probe.lower(probe.rel(TaggedDomain::first_of(a)));
  if (j == n) j = 0;
  // A run that reaches back across j means every value is equal.
  if (probe.cell(j).value == probe.cell(j == 0 ? n - 1 : j - 1).value) return 0;
  return j;
}

std::uint64_t Client::find_jmax(Plaintext b) {
  dom_.check(b);
  Probe probe(*this, session_.length());
  const std::uint64_t n = probe.n();
  if (n == 0) throw Error(ErrorCode::kEmptyStore, "find_jmax on an empty store");
  const std::uint64_t u = probe.upper(probe.rel(TaggedDomain::last_of(b)));
  const std::uint64_t j = u - 1;
  if (probe.cell(j).value == probe.cell(j + 1 == n ? 0 : j + 1).value) {
    return n - 1;
  }
  return j;
}

RangeResult Client::search_range(const RangeQuery& q) {
  dom_.check(q.a);
  dom_.check(q.b);
  Probe probe(*this, session_.length());
  const std::uint64_t n = probe.n();
  RangeResult out;
  if (n == 0) return out;

  const u128 ra = probe.rel(TaggedDomain::first_of(q.a));
  const u128 rb = probe.rel(TaggedDomain::last_of(q.b));
  const std::uint64_t lo = probe.lower(ra);
  const std::uint64_t hi_end = probe.upper(rb);  // exclusive
  if (ra <= rb) {
    if (lo < hi_end) out.segments.push_back({lo, hi_end - 1});
    return out;
  }
  // The query interval contains C[0]'s point: [0, hi_end) and [lo, n).
  const bool head = hi_end > 0;
  const bool tail = lo < n;
  if (head && tail && hi_end >= lo) {
    out.segments.push_back({0, n - 1});
  } else {
    if (head) out.segments.push_back({0, hi_end - 1});
    if (tail) out.segments.push_back({lo, n - 1});
  }
  return out;
}

std::uint64_t Client::find_rotation() { return find_jmin(0); }

std::vector<Plaintext> Client::top_k(std::uint64_t k) {
  const std::uint64_t n = session_.length();
  if (n == 0) throw Error(ErrorCode::kEmptyStore, "top_k on an empty store");
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k must be in 1.." + std::to_string(n) + ", got " +
                    std::to_string(k));
  }
  const std::uint64_t start = find_rotation();
  std::vector<Plaintext> out;
  out.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = (start + i) % n;
    out.push_back(decrypt_tagged(key_, session_.get_cell(j)).value);
  }
  return out;
}

std::vector<Plaintext> Client::fetch(const RangeResult& r) {
  std::vector<Plaintext> out;
  out.reserve(r.count());
  for (std::uint64_t j : r.indices()) {
    out.push_back(decrypt_tagged(key_, session_.get_cell(j)).value);
  }
  return out;
}

}  // namespace eseds
