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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eseds {

/// Position of a cell in the decoupled store's index space 0..2^bits-1.
/// Wide enough to also hold the exclusive upper bound 2^bits for bits = 256.
using SparseIndex = boost::multiprecision::uint512_t;

inline constexpr unsigned kMinSparseBits = 8;
inline constexpr unsigned kMaxSparseBits = 256;

/// |D| = 2^bits; bits must be a multiple of 8 in 8..256.
SparseIndex sparse_domain_size(unsigned bits);

/// Fixed-width big-endian encoding (bits/8 bytes); the value must fit.
std::vector<std::uint8_t> sparse_to_bytes(const SparseIndex& v, unsigned bits);
SparseIndex sparse_from_bytes(std::span<const std::uint8_t> bytes);

std::string to_string(const SparseIndex& v);

}  // namespace eseds
