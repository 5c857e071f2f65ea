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

#include "eseds/assignment.hpp"

#include <limits>

#include "eseds/error.hpp"

namespace eseds {

std::vector<std::size_t> solve_assignment(const CostMatrix& cost) {
  const std::size_t k = cost.size();
  for (const auto& row : cost) {
    if (row.size() != k) {
      throw Error(ErrorCode::kInvalidArgument, "cost matrix is not square");
    }
  }
  if (k == 0) return {};

  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  // 1-based; column 0 is a virtual start column.
  std::vector<Cost> u(k + 1, 0);
  std::vector<Cost> v(k + 1, 0);
  std::vector<std::size_t> row_of(k + 1, 0);
  std::vector<std::size_t> way(k + 1, 0);

  for (std::size_t i = 1; i <= k; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<Cost> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      Cost delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const Cost cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of(k);
  for (std::size_t j = 1; j <= k; ++j) col_of[row_of[j] - 1] = j - 1;
  return col_of;
}

Cost assignment_cost(const CostMatrix& cost,
                     const std::vector<std::size_t>& col_of_row) {
  Cost total = 0;
  for (std::size_t i = 0; i < col_of_row.size(); ++i) {
    total += cost[i][col_of_row[i]];
  }
  return total;
}

}  // namespace eseds
