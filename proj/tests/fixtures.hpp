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

// Shared small graphs and drawings.

#ifndef STRESSMETRICS_TESTS_FIXTURES_HPP_
#define STRESSMETRICS_TESTS_FIXTURES_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "stressmetrics/graph.hpp"
#include "stressmetrics/layout.hpp"
#include "stressmetrics/random.hpp"

namespace fixture {

using namespace stressmetrics;

inline Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
  return Graph(n, edges);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < n; ++k) edges.emplace_back(std::min(k, (k + 1) % n), std::max(k, (k + 1) % n));
  return Graph::normalized(n, edges);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

inline Layout line(std::size_t n, double spacing = 1.0) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back({spacing * static_cast<double>(k), 0.0});
  return Layout(pts);
}

inline Layout points(std::vector<Point> pts) { return Layout(std::move(pts)); }

template <class Tag>
oracle::Matrix dense(const PairwiseMatrix<Tag>& m) {
  oracle::Matrix out(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m(i, j);
  return out;
}

inline std::vector<std::pair<double, double>> coords(const Layout& x) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : x.positions()) out.emplace_back(p.x, p.y);
  return out;
}

// Connected graph from a random spanning tree plus `extra` random edges.
inline Graph random_connected(std::size_t n, std::size_t extra, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
  for (std::size_t k = 0; k < extra; ++k) {
    const auto u = rng.below(n), v = rng.below(n);
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return Graph::normalized(n, edges);
}

}  // namespace fixture

#endif  // STRESSMETRICS_TESTS_FIXTURES_HPP_
