// Copyright 2026 The stressmetrics Authors.
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

#ifndef STRESSMETRICS_STATS_HPP_
#define STRESSMETRICS_STATS_HPP_

#include <span>
#include <vector>

namespace stressmetrics {

struct RankedSeries {
  std::vector<double> values;
  // 1-based; tie groups share their average rank.
  std::vector<double> ranks;
};

/**
 * Average (fractional) ranks.
 *
 * `tie_tolerance` widens what counts as a tie: after sorting, a value joins
 * the current tie group when it exceeds the previous one by at most
 * tie_tolerance * |previous|. The default of 0 is exact equality.
 */
RankedSeries average_ranks(std::span<const double> values, double tie_tolerance = 0.0);

double pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson correlation of average ranks. Throws UndefinedCorrelationError
// when either series is constant.
double spearman(std::span<const double> xs, std::span<const double> ys,
                double tie_tolerance = 0.0);

struct IsotonicFit {
  // Non-decreasing; constant over each pooled block at the block's
  // weighted mean.
  std::vector<double> fitted;
};

// Pool-adjacent-violators: the exact weighted least-squares non-decreasing
// fit to `ys`, in input order. Empty `weights` means unit weights.
IsotonicFit isotonic_regression(std::span<const double> ys, std::span<const double> weights = {});

}  // namespace stressmetrics

#endif  // STRESSMETRICS_STATS_HPP_
