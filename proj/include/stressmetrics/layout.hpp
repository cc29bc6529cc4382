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

#ifndef STRESSMETRICS_LAYOUT_HPP_
#define STRESSMETRICS_LAYOUT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stressmetrics/graph.hpp"
#include "stressmetrics/pairwise.hpp"

namespace stressmetrics {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// A 2D drawing: one position per vertex. Coordinates are always finite;
// coincident points are allowed.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<Point> positions);

  std::size_t size() const { return positions_.size(); }
  const Point& operator[](std::size_t i) const { return positions_[i]; }
  std::span<const Point> positions() const { return positions_; }

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<Point> positions_;
};

LayoutDistances pairwise_distances(const Layout& x);

// Largest entry of `e`; 0 for a fully collapsed drawing.
double max_drawing_distance(const LayoutDistances& e);

// Multiplies every coordinate by alpha (> 0, finite).
Layout scale_layout(const Layout& x, double alpha);

// i.i.d. uniform positions on [0,1)^2.
Layout random_layout(std::size_t n, std::uint64_t seed);

// Vertex i at angle 2*pi*i/n on the unit circle.
Layout circle_layout(std::size_t n);

enum class StepWeighting {
  // mu = min(1, eta / d_ij^2), eta annealed from (max d)^2 down to eta_end.
  kInverseSquare,
  // mu annealed from step_start down to step_end for every pair.
  kUniform,
};

struct OptimizeOptions {
  std::size_t iterations = 100;
  // Pair updates per iteration; 0 selects 15 * n.
  std::size_t pair_updates = 0;
  StepWeighting weighting = StepWeighting::kInverseSquare;
  double eta_end = 0.01;
  double step_start = 0.1;
  double step_end = 0.001;
};

/**
 * Stochastic pairwise stress relaxation. Starts from random_layout(n, seed)
 * and, for each sampled pair (i, j), moves both endpoints along their
 * connecting line so the gap |X_i - X_j| closes a fraction mu of the way to
 * d_ij. Annealing is geometric over the iterations. Deterministic for a
 * fixed (graph, seed, options).
 */
Layout optimize_layout(const Graph& g, const DistanceMatrix& d, std::uint64_t seed,
                       const OptimizeOptions& options = {});

Layout optimize_layout(const Graph& g, const DistanceMatrix& d, std::uint64_t seed,
                       std::size_t iterations);

/**
 * Fruchterman-Reingold spring embedder in the unit square: all-pairs
 * repulsion k^2/r, attraction r^2/k along edges, k = sqrt(1/n), and a
 * displacement cap cooling linearly from 0.1. Starts from
 * random_layout(n, seed).
 */
Layout force_directed_layout(const Graph& g, std::uint64_t seed, std::size_t iterations = 300);

// One row of a layout file before it is matched to a graph.
struct LayoutRow {
  std::size_t id = 0;
  Point position;
  std::size_t line = 0;
};

// CSV with header "id,x,y". Rows may come in any order.
std::vector<LayoutRow> parse_layout_csv(std::string_view text);

/**
 * Assembles a layout for a graph whose vertex k has id `ids[k]` in the file.
 * Rows whose id is not listed are ignored; a listed id without a row, or a
 * repeated id, is an error naming the vertex.
 */
Layout layout_from_rows(std::span<const LayoutRow> rows, std::span<const Vertex> ids);

// Rows must cover ids 0..n-1 exactly once.
Layout layout_from_rows(std::span<const LayoutRow> rows, std::size_t n);

// Shortest round-trip decimal for every coordinate.
std::string write_layout_csv(const Layout& x);

}  // namespace stressmetrics

#endif  // STRESSMETRICS_LAYOUT_HPP_
