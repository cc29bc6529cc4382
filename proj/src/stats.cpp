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

#include "stressmetrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stressmetrics/error.hpp"
#include "summation.hpp"

namespace stressmetrics {

RankedSeries average_ranks(std::span<const double> values, double tie_tolerance) {
  if (values.empty()) throw InvalidArgument("cannot rank an empty series");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw InvalidArgument("non-finite value at position " + std::to_string(k));
    }
  }
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  RankedSeries out;
  out.values.assign(values.begin(), values.end());
  out.ranks.assign(n, 0.0);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n) {
      const double prev = values[order[end - 1]];
      const double cur = values[order[end]];
      if (cur - prev > tie_tolerance * std::abs(prev)) break;
      ++end;
    }
    // Positions start..end-1 hold ranks start+1..end; their mean:
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) out.ranks[order[k]] = rank;
    start = end;
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DimensionError("correlation of series with lengths " + std::to_string(xs.size()) +
                         " and " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw InvalidArgument("correlation needs at least 2 observations");
  const double n = static_cast<double>(xs.size());
  detail::CompensatedSum sx, sy;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  detail::CompensatedSum sxx, syy, sxy;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx.value() == 0.0 || syy.value() == 0.0) {
    throw UndefinedCorrelationError("correlation is undefined for a constant series");
  }
  const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
  return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> xs, std::span<const double> ys, double tie_tolerance) {
  if (xs.size() != ys.size()) {
    throw DimensionError("rank correlation of series with lengths " + std::to_string(xs.size()) +
                         " and " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw InvalidArgument("rank correlation needs at least 2 observations");
  const auto rx = average_ranks(xs, tie_tolerance);
  const auto ry = average_ranks(ys, tie_tolerance);
  return pearson(rx.ranks, ry.ranks);
}

IsotonicFit isotonic_regression(std::span<const double> ys, std::span<const double> weights) {
  if (ys.empty()) throw InvalidArgument("isotonic regression of an empty series");
  if (!weights.empty() && weights.size() != ys.size()) {
    throw DimensionError("isotonic regression: " + std::to_string(ys.size()) + " values but " +
                         std::to_string(weights.size()) + " weights");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidArgument("isotonic regression weights must be positive");
  }

  // Stack of blocks; each holds its weighted mean, total weight and length.
  struct Block {
    double mean;
    double weight;
    std::size_t length;
  };
  std::vector<Block> blocks;
  blocks.reserve(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) {
    Block b{ys[k], weights.empty() ? 1.0 : weights[k], 1};
    while (!blocks.empty() && blocks.back().mean >= b.mean) {
      const Block& top = blocks.back();
      const double w = top.weight + b.weight;
      b = {(top.mean * top.weight + b.mean * b.weight) / w, w, top.length + b.length};
      blocks.pop_back();
    }
    blocks.push_back(b);
  }

  IsotonicFit fit;
  fit.fitted.reserve(ys.size());
  for (const auto& b : blocks) fit.fitted.insert(fit.fitted.end(), b.length, b.mean);
  return fit;
}

}  // namespace stressmetrics
