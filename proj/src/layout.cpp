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

#include "stressmetrics/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "stressmetrics/error.hpp"
#include "stressmetrics/random.hpp"
#include "format_util.hpp"
#include "text_util.hpp"

namespace stressmetrics {

Layout::Layout(std::vector<Point> positions) : positions_(std::move(positions)) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i].x) || !std::isfinite(positions_[i].y)) {
      throw InvalidArgument("non-finite coordinate for vertex " + std::to_string(i));
    }
  }
}

LayoutDistances pairwise_distances(const Layout& x) {
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("pairwise distances need at least 2 points");
  LayoutDistances e(n);
  auto out = e.values();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      out[k++] = std::hypot(p.x - x[j].x, p.y - x[j].y);
    }
  }
  return e;
}

double max_drawing_distance(const LayoutDistances& e) {
  auto v = e.values();
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

Layout scale_layout(const Layout& x, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("scale factor must be positive and finite, got " +
                          std::to_string(alpha));
  }
  std::vector<Point> scaled(x.positions().begin(), x.positions().end());
  for (auto& p : scaled) {
    p.x *= alpha;
    p.y *= alpha;
  }
  return Layout(std::move(scaled));
}

Layout random_layout(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random layout needs at least 1 vertex");
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return Layout(std::move(pts));
}

Layout circle_layout(std::size_t n) {
  if (n < 2) throw InvalidArgument("circle layout needs at least 2 vertices");
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = {std::cos(theta), std::sin(theta)};
  }
  return Layout(std::move(pts));
}

Layout optimize_layout(const Graph& g, const DistanceMatrix& d, std::uint64_t seed,
                       const OptimizeOptions& options) {
  const std::size_t n = g.vertex_count();
  if (d.size() != n) {
    throw DimensionError("distance matrix has " + std::to_string(d.size()) +
                         " vertices, graph has " + std::to_string(n));
  }
  if (options.iterations == 0) throw InvalidArgument("optimize_layout needs iterations >= 1");
  if (!(options.step_start > 0.0) || !(options.step_end > 0.0) || !(options.eta_end > 0.0)) {
    throw InvalidArgument("step schedule must be positive");
  }
  const Layout init = random_layout(n, seed);
  if (n < 2) return init;

  std::vector<Point> pos(init.positions().begin(), init.positions().end());
  Rng rng = Rng(seed).split("optimize");
  const std::size_t updates = options.pair_updates == 0 ? 15 * n : options.pair_updates;
  const bool weighted = options.weighting == StepWeighting::kInverseSquare;
  const double dmax = max_distance(d);
  const double start = weighted ? dmax * dmax : options.step_start;
  const double ratio = (weighted ? options.eta_end : options.step_end) / start;

  for (std::size_t it = 0; it < options.iterations; ++it) {
    const double t = options.iterations == 1
                         ? 0.0
                         : static_cast<double>(it) / static_cast<double>(options.iterations - 1);
    const double eta = start * std::pow(ratio, t);
    for (std::size_t k = 0; k < updates; ++k) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      auto j = static_cast<std::size_t>(rng.below(n - 1));
      if (j >= i) ++j;
      double dx = pos[i].x - pos[j].x;
      double dy = pos[i].y - pos[j].y;
      double len = std::hypot(dx, dy);
      if (len == 0.0) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        dx = std::cos(theta);
        dy = std::sin(theta);
        len = 1.0;
      }
      const double dij = d(i, j);
      const double mu = weighted ? std::min(1.0, eta / (dij * dij)) : eta;
      const double shift = mu * (len - dij) / 2.0 / len;
      pos[i].x -= shift * dx;
      pos[i].y -= shift * dy;
      pos[j].x += shift * dx;
      pos[j].y += shift * dy;
    }
  }
  return Layout(std::move(pos));
}

Layout optimize_layout(const Graph& g, const DistanceMatrix& d, std::uint64_t seed,
                       std::size_t iterations) {
  OptimizeOptions options;
  options.iterations = iterations;
  return optimize_layout(g, d, seed, options);
}

Layout force_directed_layout(const Graph& g, std::uint64_t seed, std::size_t iterations) {
  if (iterations == 0) throw InvalidArgument("force_directed_layout needs iterations >= 1");
  const std::size_t n = g.vertex_count();
  const Layout init = random_layout(n, seed);
  if (n < 2) return init;

  std::vector<Point> pos(init.positions().begin(), init.positions().end());
  const double k = std::sqrt(1.0 / static_cast<double>(n));
  constexpr double kMinDistance = 1e-9;
  constexpr double kStartTemperature = 0.1;
  double temperature = kStartTemperature;
  std::vector<Point> disp(n);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = pos[i].x - pos[j].x;
        const double dy = pos[i].y - pos[j].y;
        const double r = std::max(kMinDistance, std::hypot(dx, dy));
        const double f = k * k / r / r;
        disp[i].x += dx * f;
        disp[i].y += dy * f;
        disp[j].x -= dx * f;
        disp[j].y -= dy * f;
      }
    }
    for (const auto& [u, v] : g.edges()) {
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      const double r = std::max(kMinDistance, std::hypot(dx, dy));
      const double f = r / k;
      disp[u].x -= dx * f;
      disp[u].y -= dy * f;
      disp[v].x += dx * f;
      disp[v].y += dy * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::max(kMinDistance, std::hypot(disp[i].x, disp[i].y));
      const double s = std::min(len, temperature) / len;
      pos[i].x += disp[i].x * s;
      pos[i].y += disp[i].y * s;
    }
    temperature = kStartTemperature * (1.0 - static_cast<double>(it + 1) / static_cast<double>(iterations)) + 1e-4;
  }
  return Layout(std::move(pos));
}

namespace {

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_id(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<LayoutRow> parse_layout_csv(std::string_view text) {
  std::vector<LayoutRow> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    auto cells = detail::split(line, ',');
    for (auto& c : cells) c = detail::trim(c);
    if (!header_seen) {
      if (cells.size() != 3 || cells[0] != "id" || cells[1] != "x" || cells[2] != "y") {
        throw ParseError("expected header 'id,x,y'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 3) {
      throw ParseError("expected 3 columns, found " + std::to_string(cells.size()), line_no);
    }
    auto id = parse_id(cells[0]);
    auto x = parse_double(cells[1]);
    auto y = parse_double(cells[2]);
    if (!id) throw ParseError("malformed vertex id '" + std::string(cells[0]) + "'", line_no);
    if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
      throw ParseError("malformed or non-finite coordinate for vertex " + std::to_string(*id),
                       line_no);
    }
    rows.push_back({*id, {*x, *y}, line_no});
  }
  if (!header_seen) throw ParseError("missing header 'id,x,y'", 0);
  return rows;
}

Layout layout_from_rows(std::span<const LayoutRow> rows, std::span<const Vertex> ids) {
  // ids is increasing for component remaps but not required to be.
  std::vector<std::pair<Vertex, std::size_t>> wanted;
  wanted.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) wanted.emplace_back(ids[k], k);
  std::sort(wanted.begin(), wanted.end());

  std::vector<Point> pts(ids.size());
  std::vector<bool> filled(ids.size(), false);
  for (const auto& row : rows) {
    auto it = std::lower_bound(wanted.begin(), wanted.end(), std::make_pair(row.id, std::size_t{0}));
    if (it == wanted.end() || it->first != row.id) continue;
    if (filled[it->second]) {
      throw ParseError("duplicate row for vertex " + std::to_string(row.id), row.line);
    }
    pts[it->second] = row.position;
    filled[it->second] = true;
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!filled[k]) throw ParseError("missing layout row for vertex " + std::to_string(ids[k]), 0);
  }
  return Layout(std::move(pts));
}

Layout layout_from_rows(std::span<const LayoutRow> rows, std::size_t n) {
  for (const auto& row : rows) {
    if (row.id >= n) {
      throw ParseError("vertex id " + std::to_string(row.id) + " out of range for " +
                           std::to_string(n) + " vertices",
                       row.line);
    }
  }
  std::vector<Vertex> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = k;
  return layout_from_rows(rows, ids);
}

std::string write_layout_csv(const Layout& x) {
  std::string out = "id,x,y\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += detail::format_double(x[i].x);
    out += ',';
    out += detail::format_double(x[i].y);
    out += '\n';
  }
  return out;
}

}  // namespace stressmetrics
