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

#include <cstddef>
#include <vector>

namespace eseds {

using Cost = __int128;
using CostMatrix = std::vector<std::vector<Cost>>;

/// Minimum-cost perfect matching on a square matrix of non-negative costs
/// (Hungarian method, shortest augmenting paths with potentials, O(k^3)).
/// Returns col[row].
std::vector<std::size_t> solve_assignment(const CostMatrix& cost);

Cost assignment_cost(const CostMatrix& cost,
                     const std::vector<std::size_t>& col_of_row);

}  // namespace eseds
