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

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stressmetrics/error.hpp"
#include "stressmetrics/experiment.hpp"
#include "stressmetrics/layout.hpp"
#include "stressmetrics/metrics.hpp"

using namespace stressmetrics;
using doctest::Approx;

TEST_CASE("pairwise_distances") {
  CHECK(pairwise_distances(fixture::points({{0, 0}, {3, 4}}))(0, 1) == 5.0);
  const auto e = pairwise_distances(fixture::line(3));
  CHECK(fixture::dense(e) == oracle::Matrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(max_drawing_distance(e) == 2.0);
  CHECK_THROWS_AS(pairwise_distances(fixture::points({{0, 0}})), InvalidArgument);
}

TEST_CASE("pairwise_distances matches a naive double loop") {
  const Layout x = random_layout(100, 99);
  const auto e = fixture::dense(pairwise_distances(x));
  const auto want = oracle::euclidean(fixture::coords(x));
  double worst = 0.0;
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t j = 0; j < 100; ++j)
      if (i != j) worst = std::max(worst, oracle::relative_error(e[i][j], want[i][j]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("layouts reject non-finite coordinates") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(fixture::points({{0, 0}, {inf, 1}}), InvalidArgument);
  CHECK_THROWS_AS(fixture::points({{std::nan(""), 0}, {0, 1}}), InvalidArgument);
}

TEST_CASE("scale_layout") {
  const Layout x = random_layout(10, 3);
  CHECK(scale_layout(x, 1.0) == x);
  CHECK(scale_layout(fixture::points({{0, 0}, {1, 0}}), 2.0) == fixture::points({{0, 0}, {2, 0}}));
  CHECK(scale_layout(scale_layout(x, 0.5), 0.5) == scale_layout(x, 0.25));
  CHECK_THROWS_AS(scale_layout(x, 0.0), InvalidArgument);
  CHECK_THROWS_AS(scale_layout(x, -1.0), InvalidArgument);
  CHECK_THROWS_AS(scale_layout(x, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("scaled distances are alpha times the originals") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Layout x = random_layout(30, seed);
    const auto e = pairwise_distances(x);
    for (double alpha : {0.01, 0.5, 2.0, 1000.0}) {
      const auto es = pairwise_distances(scale_layout(x, alpha));
      double worst = 0.0;
      for (std::size_t k = 0; k < e.values().size(); ++k) {
        worst = std::max(worst, oracle::relative_error(es.values()[k], alpha * e.values()[k]));
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("random_layout") {
  CHECK(random_layout(20, 5) == random_layout(20, 5));
  const Layout big = random_layout(1000, 11);
  for (const auto& p : big.positions()) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 1.0);
  }
  std::set<std::vector<double>> seen;
  double mean_max = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Layout x = random_layout(47, seed);
    std::vector<double> flat;
    for (const auto& p : x.positions()) flat.insert(flat.end(), {p.x, p.y});
    seen.insert(flat);
    mean_max += max_drawing_distance(pairwise_distances(x)) / 100.0;
  }
  CHECK(seen.size() == 100);
  CHECK(mean_max >= 1.0);
  CHECK(mean_max <= std::sqrt(2.0));
}

TEST_CASE("circle_layout") {
  const auto sq = pairwise_distances(circle_layout(4));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(sq(k, (k + 1) % 4) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
  CHECK(sq(0, 2) == Approx(2.0).epsilon(1e-15));
  const Layout two = circle_layout(2);
  CHECK(two[0].x == 1.0);
  CHECK(two[0].y == 0.0);
  CHECK(two[1].x == Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(two[1].y) < 1e-15);
  const auto hex = pairwise_distances(circle_layout(6));
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(hex(k, (k + 1) % 6) == Approx(2.0 * std::sin(std::numbers::pi / 6)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(circle_layout(1), InvalidArgument);
}

TEST_CASE("optimize_layout on small graphs") {
  const Graph p3 = fixture::path(3);
  const auto d3 = apsp(p3);
  const Layout x = optimize_layout(p3, d3, 1, 100);
  CHECK(scale_normalized_stress(pairwise_distances(x), d3).value < 0.05);

  const Graph k3 = fixture::complete(3);
  const auto e = pairwise_distances(optimize_layout(k3, apsp(k3), 2, 100));
  const double mean = (e(0, 1) + e(0, 2) + e(1, 2)) / 3.0;
  for (double v : e.values()) CHECK(std::abs(v - mean) <= 0.1 * mean);

  CHECK_THROWS_AS(optimize_layout(p3, d3, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(optimize_layout(fixture::path(4), d3, 1, 10), DimensionError);
}

TEST_CASE("optimize_layout is deterministic") {
  Rng rng(5);
  const Graph g = fixture::random_connected(25, 10, rng);
  const auto d = apsp(g);
  CHECK(optimize_layout(g, d, 42, 50) == optimize_layout(g, d, 42, 50));
  CHECK_FALSE(optimize_layout(g, d, 42, 50) == optimize_layout(g, d, 43, 50));
}

TEST_CASE("optimize_layout improves on its starting drawing") {
  for (auto weighting : {StepWeighting::kInverseSquare, StepWeighting::kUniform}) {
    OptimizeOptions options;
    options.weighting = weighting;
    std::size_t improved = 0;
    const auto corpus = generate_corpus(123);
    for (const auto& entry : corpus) {
      const auto d = apsp(entry.graph);
      const double before =
          scale_normalized_stress(pairwise_distances(random_layout(entry.graph.vertex_count(), entry.seed)), d).value;
      const double after =
          scale_normalized_stress(pairwise_distances(optimize_layout(entry.graph, d, entry.seed, options)), d).value;
      if (after < before) ++improved;
    }
    CHECK(static_cast<double>(improved) >= 0.95 * static_cast<double>(corpus.size()));
  }
}

TEST_CASE("force_directed_layout") {
  Rng rng(8);
  const Graph g = fixture::random_connected(30, 8, rng);
  const auto d = apsp(g);
  CHECK(force_directed_layout(g, 4) == force_directed_layout(g, 4));
  const double before = scale_normalized_stress(pairwise_distances(random_layout(30, 4)), d).value;
  const double after = scale_normalized_stress(pairwise_distances(force_directed_layout(g, 4)), d).value;
  CHECK(after < before);
  CHECK_THROWS_AS(force_directed_layout(g, 4, 0), InvalidArgument);
}

TEST_CASE("layout CSV") {
  SUBCASE("rows in any order") {
    const auto rows = parse_layout_csv("id,x,y\n2,2,0\n0,0,0\n1,1.5,-3e2\n");
    const Layout x = layout_from_rows(rows, 3);
    CHECK(x[1] == Point{1.5, -300.0});
    CHECK(x[2] == Point{2.0, 0.0});
  }
  SUBCASE("round trip is bit-exact") {
    const Layout x = scale_layout(random_layout(200, 17), 711.023);
    CHECK(layout_from_rows(parse_layout_csv(write_layout_csv(x)), 200) == x);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_layout_csv("x,y\n0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_layout_csv("id,x,y\n0,1\n"), ParseError);
    CHECK_THROWS_AS(parse_layout_csv("id,x,y\n0,a,1\n"), ParseError);
    CHECK_THROWS_AS(layout_from_rows(parse_layout_csv("id,x,y\n0,0,0\n0,1,1\n"), 1), ParseError);
    CHECK_THROWS_AS(layout_from_rows(parse_layout_csv("id,x,y\n0,0,0\n5,1,1\n"), 2), ParseError);
    try {
      layout_from_rows(parse_layout_csv("id,x,y\n0,0,0\n2,1,1\n"), 3);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("vertex 1") != std::string::npos);
    }
  }
  SUBCASE("remapped ids") {
    const std::vector<Vertex> ids{4, 7};
    const Layout x = layout_from_rows(parse_layout_csv("id,x,y\n7,1,0\n4,0,0\n9,5,5\n"), ids);
    CHECK(x == fixture::points({{0, 0}, {1, 0}}));
  }
}
