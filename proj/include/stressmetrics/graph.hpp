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

#ifndef STRESSMETRICS_GRAPH_HPP_
#define STRESSMETRICS_GRAPH_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stressmetrics/pairwise.hpp"

namespace stressmetrics {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/**
 * Undirected simple graph over vertices 0..vertex_count()-1.
 *
 * Edges are stored once as (u, v) with u < v, sorted. The constructor
 * rejects self-loops, duplicates and out-of-range endpoints; use the
 * parsers or `Graph::normalized` to clean up raw input.
 */
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  // Sorts endpoints, drops self-loops and duplicates. Range is still checked.
  static Graph normalized(std::size_t vertex_count, std::vector<Edge> edges,
                          std::size_t* self_loops_dropped = nullptr);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency.
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

struct EdgeListParse {
  Graph graph;
  std::size_t self_loops_dropped = 0;
};

// "u v" per line, '#' starts a comment. A "# vertices: N" comment line
// raises the vertex count to at least N so trailing isolated vertices
// survive a write/read cycle.
EdgeListParse parse_edge_list(std::string_view text);
std::string serialize_edge_list(const Graph& g);

// Coordinate-format Matrix Market; pattern, real and integer fields.
// Every stored off-diagonal entry becomes an undirected edge.
Graph parse_matrix_market(std::string_view text);

struct Component {
  Graph graph;
  // original_ids[new_id] = id in the input graph; increasing.
  std::vector<Vertex> original_ids;

  bool is_identity() const;
};

// Largest connected component, renumbered in original id order. Equal
// sizes go to the component holding the smallest vertex id.
Component largest_connected_component(const Graph& g);

bool is_connected(const Graph& g);

// Hop-count distances from one breadth-first search per source.
DistanceMatrix apsp(const Graph& g);

// Graph diameter: the largest entry of `d`.
double max_distance(const DistanceMatrix& d);

}  // namespace stressmetrics

#endif  // STRESSMETRICS_GRAPH_HPP_
