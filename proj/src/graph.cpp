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

#include "stressmetrics/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>

#include "stressmetrics/error.hpp"
#include "text_util.hpp"

namespace stressmetrics {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) {
      throw InvalidArgument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") out of range for " + std::to_string(n_) + " vertices");
    }
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InvalidArgument("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }

  std::vector<std::size_t> degree(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }
}

Graph Graph::normalized(std::size_t vertex_count, std::vector<Edge> edges,
                        std::size_t* self_loops_dropped) {
  std::size_t loops = 0;
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) {
      ++loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    kept.emplace_back(u, v);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (self_loops_dropped != nullptr) *self_loops_dropped = loops;
  return Graph(vertex_count, std::move(kept));
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return std::span<const Vertex>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

std::optional<std::size_t> parse_index(std::string_view token) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

EdgeListParse parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t declared = 0;
  std::size_t max_id_plus_one = 0;
  std::size_t line_no = 0;

  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = detail::trim(line.substr(1));
      if (body.starts_with("vertices:")) {
        auto n = parse_index(detail::trim(body.substr(9)));
        if (!n) throw ParseError("malformed vertices directive", line_no);
        declared = std::max(declared, *n);
      }
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = detail::trim(line.substr(0, hash));
    }
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError("expected two vertex ids, found " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    }
    auto u = parse_index(tokens[0]);
    auto v = parse_index(tokens[1]);
    if (!u || !v) {
      throw ParseError("malformed vertex id '" + std::string(!u ? tokens[0] : tokens[1]) + "'",
                       line_no);
    }
    edges.emplace_back(*u, *v);
    max_id_plus_one = std::max({max_id_plus_one, *u + 1, *v + 1});
  }

  EdgeListParse out;
  out.graph = Graph::normalized(std::max(declared, max_id_plus_one), std::move(edges),
                                &out.self_loops_dropped);
  return out;
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "# vertices: " << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

Graph parse_matrix_market(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty Matrix Market input", 0);

  auto header = detail::split_ws(detail::trim(lines[0]));
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket" || lower(header[1]) != "matrix") {
    throw ParseError("missing '%%MatrixMarket matrix' header", 1);
  }
  if (lower(header[2]) != "coordinate") {
    throw ParseError("unsupported Matrix Market format '" + std::string(header[2]) +
                         "' (only coordinate)",
                     1);
  }
  const std::string field = lower(header[3]);
  if (field != "pattern" && field != "real" && field != "integer") {
    throw ParseError("unsupported Matrix Market field '" + std::string(header[3]) + "'", 1);
  }
  const std::string symmetry = lower(header[4]);
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric") {
    throw ParseError("unsupported Matrix Market symmetry '" + std::string(header[4]) + "'", 1);
  }

  std::size_t line_no = 1;
  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::size_t read = 0;
  std::vector<Edge> edges;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    ++line_no;
    std::string_view line = detail::trim(lines[k]);
    if (line.empty() || line.front() == '%') continue;
    auto tokens = detail::split_ws(line);
    if (!have_size) {
      if (tokens.size() != 3) throw ParseError("expected 'rows cols entries' size line", line_no);
      auto r = parse_index(tokens[0]), c = parse_index(tokens[1]), z = parse_index(tokens[2]);
      if (!r || !c || !z) throw ParseError("malformed size line", line_no);
      rows = *r;
      cols = *c;
      nnz = *z;
      if (rows != cols) {
        throw ParseError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                             "; a graph needs a square matrix",
                         line_no);
      }
      have_size = true;
      edges.reserve(nnz);
      continue;
    }
    const std::size_t want = field == "pattern" ? 2 : 3;
    if (tokens.size() != want) {
      throw ParseError("expected " + std::to_string(want) + " tokens per entry", line_no);
    }
    auto i = parse_index(tokens[0]), j = parse_index(tokens[1]);
    if (!i || !j || *i == 0 || *j == 0 || *i > rows || *j > cols) {
      throw ParseError("entry index out of range", line_no);
    }
    ++read;
    if (read > nnz) throw ParseError("more entries than declared", line_no);
    edges.emplace_back(*i - 1, *j - 1);
  }
  if (!have_size) throw ParseError("missing size line", 0);
  if (read != nnz) {
    throw ParseError("declared " + std::to_string(nnz) + " entries, found " + std::to_string(read),
                     0);
  }
  return Graph::normalized(rows, std::move(edges));
}

bool Component::is_identity() const {
  for (std::size_t k = 0; k < original_ids.size(); ++k) {
    if (original_ids[k] != k) return false;
  }
  return true;
}

namespace {

// Component label per vertex, labels assigned in order of smallest member.
std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.vertex_count(), kUnset);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u)) {
        if (label[v] == kUnset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  *count = next;
  return label;
}

}  // namespace

Component largest_connected_component(const Graph& g) {
  if (g.vertex_count() == 0) throw InvalidArgument("empty graph has no components");
  std::size_t count = 0;
  auto label = component_labels(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  // max_element returns the first maximum, i.e. the lowest label, which is
  // the component whose smallest vertex id is smallest.
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Component out;
  std::vector<std::size_t> new_id(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (label[v] == best) {
      new_id[v] = out.original_ids.size();
      out.original_ids.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (label[u] == best) edges.emplace_back(new_id[u], new_id[v]);
  }
  out.graph = Graph(out.original_ids.size(), std::move(edges));
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  std::size_t count = 0;
  component_labels(g, &count);
  return count == 1;
}

DistanceMatrix apsp(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidArgument("apsp needs at least 2 vertices, got " + std::to_string(n));

  DistanceMatrix d(n);
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> hops(n);
  std::vector<Vertex> frontier;
  frontier.reserve(n);

  for (Vertex s = 0; s < n; ++s) {
    std::fill(hops.begin(), hops.end(), kUnseen);
    hops[s] = 0;
    frontier.clear();
    frontier.push_back(s);
    // frontier doubles as the FIFO queue; head walks forward.
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      Vertex u = frontier[head];
      for (Vertex v : g.neighbors(u)) {
        if (hops[v] == kUnseen) {
          hops[v] = hops[u] + 1;
          frontier.push_back(v);
        }
      }
    }
    for (Vertex t = s + 1; t < n; ++t) {
      if (hops[t] == kUnseen) {
        throw DisconnectedGraphError("graph is disconnected: no path between vertices " +
                                     std::to_string(s) + " and " + std::to_string(t));
      }
      d.set(s, t, static_cast<double>(hops[t]));
    }
  }
  return d;
}

double max_distance(const DistanceMatrix& d) {
  auto v = d.values();
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace stressmetrics
