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
#include <vector>

namespace eseds::stats {

struct ChiSquare {
  double statistic = 0;
  unsigned dof = 0;
  double p_value = 1;
};

/// Pearson goodness of fit against equal expected counts.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts);

struct Summary {
  std::size_t n = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double std_error = 0;
  /// Half width of the two-sided Student-t interval at the given level.
  double ci_half_width = 0;
};

Summary summarize(const std::vector<double>& xs, double level = 0.95);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace eseds::stats
