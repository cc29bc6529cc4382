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

#ifndef STRESSMETRICS_PAIRWISE_HPP_
#define STRESSMETRICS_PAIRWISE_HPP_

#include <cassert>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stressmetrics/error.hpp"

namespace stressmetrics {

constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/**
 * Symmetric n x n matrix with zero diagonal, stored as its strict upper
 * triangle in row-major i<j order. Every metric sums over exactly this
 * sequence, so `values()` is the canonical pair order used everywhere.
 *
 * The tag parameter keeps graph distances and drawing distances apart at
 * the type level; they are never interchangeable by accident.
 */
template <class Tag>
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;

  explicit PairwiseMatrix(std::size_t n) : n_(n), values_(pair_count(n), 0.0) {}

  PairwiseMatrix(std::size_t n, std::vector<double> upper) : n_(n), values_(std::move(upper)) {
    if (values_.size() != pair_count(n)) {
      throw DimensionError("pairwise matrix of order " + std::to_string(n) + " needs " +
                           std::to_string(pair_count(n)) + " values, got " +
                           std::to_string(values_.size()));
    }
  }

  std::size_t size() const { return n_; }

  // Offset of pair (i, j), i < j, within `values()`.
  std::size_t index(std::size_t i, std::size_t j) const {
    assert(i < j && j < n_);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i < j ? values_[index(i, j)] : values_[index(j, i)];
  }

  void set(std::size_t i, std::size_t j, double v) {
    assert(i != j);
    values_[i < j ? index(i, j) : index(j, i)] = v;
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct GraphDistanceTag {};
struct LayoutDistanceTag {};

// Shortest-path distances d_ij (hop counts).
using DistanceMatrix = PairwiseMatrix<GraphDistanceTag>;
// Euclidean drawing distances ||X_i - X_j||.
using LayoutDistances = PairwiseMatrix<LayoutDistanceTag>;

}  // namespace stressmetrics

#endif  // STRESSMETRICS_PAIRWISE_HPP_
