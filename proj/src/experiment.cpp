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

#include "stressmetrics/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stressmetrics/error.hpp"
#include "stressmetrics/stats.hpp"
#include "format_util.hpp"

namespace stressmetrics {

using json = nlohmann::ordered_json;

std::string_view scale_policy_name(ScalePolicy p) {
  return p == ScalePolicy::kAsIs ? "as-is" : "paper-like";
}

std::optional<ScalePolicy> parse_scale_policy(std::string_view name) {
  if (name == "as-is") return ScalePolicy::kAsIs;
  if (name == "paper-like") return ScalePolicy::kPaperLike;
  return std::nullopt;
}

// ---- corpus ----------------------------------------------------------------

std::size_t CorpusOptions::edge_target(std::size_t n) const {
  const double wanted = density ? *density * static_cast<double>(pair_count(n))
                                : edges_per_vertex * static_cast<double>(n);
  return static_cast<std::size_t>(std::llround(wanted));
}

Graph random_connected_graph(std::size_t n, std::size_t edge_count, Rng& rng) {
  if (n < 2) throw InvalidArgument("random connected graph needs at least 2 vertices");
  const std::size_t target = std::clamp(edge_count, n - 1, pair_count(n));

  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t k = n - 1; k > 0; --k) {
    std::swap(perm[k], perm[rng.below(k + 1)]);
  }
  std::set<Edge> edges;
  for (std::size_t k = 1; k < n; ++k) {
    Vertex u = perm[k], v = perm[rng.below(k)];
    edges.insert(std::minmax(u, v));
  }
  while (edges.size() < target) {
    Vertex u = rng.below(n), v = rng.below(n);
    if (u != v) edges.insert(std::minmax(u, v));
  }
  const Graph raw(n, std::vector<Edge>(edges.begin(), edges.end()));

  // Breadth-first relabelling from vertex 0.
  std::vector<Vertex> order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex v : raw.neighbors(order[head])) {
      if (!seen[v]) {
        seen[v] = true;
        order.push_back(v);
      }
    }
  }
  std::vector<Vertex> new_id(n);
  for (std::size_t k = 0; k < n; ++k) new_id[order[k]] = k;
  std::vector<Edge> relabelled;
  relabelled.reserve(edges.size());
  for (const auto& [u, v] : raw.edges()) relabelled.emplace_back(new_id[u], new_id[v]);
  return Graph(n, std::move(relabelled));
}

std::vector<CorpusGraph> generate_corpus(std::uint64_t seed, const CorpusOptions& options) {
  if (options.min_vertices < 3 || options.max_vertices < options.min_vertices) {
    throw InvalidArgument("corpus vertex range must satisfy 3 <= min <= max");
  }
  if (options.density && !(*options.density >= 0.0 && *options.density <= 1.0)) {
    throw InvalidArgument("density must lie in [0, 1]");
  }
  if (!(options.edges_per_vertex >= 0.0) || !std::isfinite(options.edges_per_vertex)) {
    throw InvalidArgument("edges_per_vertex must be finite and non-negative");
  }
  const Rng root(seed);
  std::vector<CorpusGraph> corpus;
  corpus.reserve(options.graph_count);
  for (std::size_t k = 0; k < options.graph_count; ++k) {
    const Rng graph_rng = root.split(k);
    Rng gen = graph_rng.split("graph");
    const std::size_t n =
        options.min_vertices + gen.below(options.max_vertices - options.min_vertices + 1);
    CorpusGraph entry;
    entry.id = "g" + detail::zero_pad(k, 3);
    entry.graph = random_connected_graph(n, options.edge_target(n), gen);
    entry.seed = graph_rng.seed();
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CorpusGraph> load_corpus_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidArgument("corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusGraph> out;
  for (const auto& path : files) {
    const std::string text = read_file(path);
    Graph g = path.extension() == ".mtx" ? parse_matrix_market(text) : parse_edge_list(text).graph;
    CorpusGraph entry;
    entry.id = path.filename().string();
    entry.graph = largest_connected_component(g).graph;
    entry.seed = mix_seed(std::hash<std::string>{}(entry.id));
    out.push_back(std::move(entry));
  }
  return out;
}

// ---- trials ----------------------------------------------------------------

std::vector<NamedLayout> standard_layouts(const Graph& g, const DistanceMatrix& d,
                                          std::uint64_t seed, std::size_t iterations) {
  const Rng rng(seed);
  std::vector<NamedLayout> out;
  out.push_back({std::string(kOptimizedSource),
                 optimize_layout(g, d, rng.split(kOptimizedSource).seed(), iterations)});
  out.push_back({std::string(kForceSource),
                 force_directed_layout(g, rng.split(kForceSource).seed())});
  out.push_back({std::string(kRandomSource),
                 random_layout(g.vertex_count(), rng.split(kRandomSource).seed())});
  return out;
}

const MetricScore* LayoutScores::find(MetricId id) const {
  for (const auto& s : scores) {
    if (s.metric == id) return &s;
  }
  return nullptr;
}

const LayoutScores* TrialRecord::find(std::string_view source) const {
  for (const auto& l : layouts) {
    if (l.source == source) return &l;
  }
  return nullptr;
}

Layout apply_scale_policy(std::string_view source, const Layout& x, ScalePolicy policy) {
  if (policy == ScalePolicy::kAsIs) return x;
  if (source != kOptimizedSource && source != kForceSource && source != kCircleSource) return x;
  const double current = max_drawing_distance(pairwise_distances(x));
  if (current == 0.0) throw DegenerateLayoutError("cannot rescale a collapsed " + std::string(source) + " drawing");
  return scale_layout(x, kPaperLikeMaxDistance / current);
}

TrialRecord run_trial(std::string graph_id, const Graph& g, const DistanceMatrix& d,
                      std::span<const NamedLayout> layouts, std::span<const MetricId> metrics,
                      ScalePolicy policy, const MetricOptions& options) {
  using Clock = std::chrono::steady_clock;
  const std::size_t n = g.vertex_count();
  if (d.size() != n) throw DimensionError("distance matrix does not match graph " + graph_id);

  TrialRecord record;
  record.graph_id = std::move(graph_id);
  record.vertex_count = n;
  for (const auto& named : layouts) {
    if (named.layout.size() != n) {
      throw DimensionError("layout '" + named.source + "' has " +
                           std::to_string(named.layout.size()) + " vertices, graph " +
                           record.graph_id + " has " + std::to_string(n));
    }
    const Layout scaled = apply_scale_policy(named.source, named.layout, policy);
    const LayoutDistances e = pairwise_distances(scaled);

    LayoutScores scores;
    scores.source = named.source;
    scores.max_drawing_distance = max_drawing_distance(e);
    for (MetricId id : metrics) {
      MetricScore s;
      s.metric = id;
      if (id == MetricId::kDistanceRatioStress && n > kDistanceRatioMaxVertices &&
          !options.force_drs) {
        s.skipped = true;
        scores.scores.push_back(s);
        continue;
      }
      const auto start = Clock::now();
      const MetricValue v = evaluate_metric(id, e, d, options);
      s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      s.value = v.value;
      s.alpha_min = v.alpha_min;
      scores.scores.push_back(s);
    }
    record.layouts.push_back(std::move(scores));
  }
  return record;
}

TrialRecord run_trial(std::string graph_id, const Graph& g, std::span<const NamedLayout> layouts,
                      std::span<const MetricId> metrics, ScalePolicy policy,
                      const MetricOptions& options) {
  const DistanceMatrix d = apsp(g);
  return run_trial(std::move(graph_id), g, d, layouts, metrics, policy, options);
}

// ---- ordering frequencies --------------------------------------------------

double MetricOrderCounts::pair_frequency(std::size_t k) const {
  return graphs == 0 ? 0.0 : static_cast<double>(pair_counts[k]) / static_cast<double>(graphs);
}

double MetricOrderCounts::permutation_frequency(std::size_t k) const {
  return graphs == 0 ? 0.0
                     : static_cast<double>(permutation_counts[k]) / static_cast<double>(graphs);
}

std::array<std::array<std::size_t, 3>, 6> OrderFrequencyTable::permutations() {
  return {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
}

std::array<std::array<std::size_t, 2>, 6> OrderFrequencyTable::ordered_pairs() {
  return {{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
}

std::array<std::string, 6> OrderFrequencyTable::pair_labels() const {
  std::array<std::string, 6> out;
  const auto pairs = ordered_pairs();
  for (std::size_t k = 0; k < 6; ++k) out[k] = sources[pairs[k][0]] + "<" + sources[pairs[k][1]];
  return out;
}

std::array<std::string, 6> OrderFrequencyTable::permutation_labels() const {
  std::array<std::string, 6> out;
  const auto perms = permutations();
  for (std::size_t k = 0; k < 6; ++k) {
    out[k] = sources[perms[k][0]] + "<" + sources[perms[k][1]] + "<" + sources[perms[k][2]];
  }
  return out;
}

const MetricOrderCounts* OrderFrequencyTable::find(MetricId id) const {
  for (const auto& m : metrics) {
    if (m.metric == id) return &m;
  }
  return nullptr;
}

double OrderFrequencyTable::ground_truth_frequency(MetricId id) const {
  const auto* m = find(id);
  if (m == nullptr) throw InvalidArgument("metric " + std::string(metric_name(id)) + " not in table");
  return m->permutation_frequency(0);
}

double OrderFrequencyTable::best_frequency(MetricId id, std::size_t source_index) const {
  const auto* m = find(id);
  if (m == nullptr) throw InvalidArgument("metric " + std::string(metric_name(id)) + " not in table");
  const auto perms = permutations();
  std::size_t count = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    if (perms[k][0] == source_index) count += m->permutation_counts[k];
  }
  return m->graphs == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(m->graphs);
}

namespace {

// Lower is better after orientation.
std::optional<double> oriented_score(const TrialRecord& record, std::string_view source,
                                     MetricId id) {
  const auto* layout = record.find(source);
  if (layout == nullptr) {
    throw InvalidArgument("graph " + record.graph_id + " has no '" + std::string(source) +
                          "' drawing");
  }
  const auto* score = layout->find(id);
  if (score == nullptr || score->skipped) return std::nullopt;
  return higher_is_better(id) ? -score->value : score->value;
}

}  // namespace

std::array<std::size_t, 3> rank_sources(const TrialRecord& record, MetricId id,
                                        const SourceTriple& sources, bool* tied) {
  std::array<double, 3> v{};
  for (std::size_t k = 0; k < 3; ++k) {
    auto s = oriented_score(record, sources[k], id);
    if (!s) {
      throw InvalidArgument("metric " + std::string(metric_name(id)) + " missing for graph " +
                            record.graph_id);
    }
    v[k] = *s;
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] < v[b];
    return sources[a] < sources[b];
  });
  if (tied != nullptr) *tied = v[0] == v[1] || v[0] == v[2] || v[1] == v[2];
  return order;
}

OrderFrequencyTable order_frequencies(std::span<const TrialRecord> records,
                                      std::span<const MetricId> metrics,
                                      const SourceTriple& sources) {
  OrderFrequencyTable table;
  table.sources = sources;
  const auto perms = OrderFrequencyTable::permutations();
  const auto pairs = OrderFrequencyTable::ordered_pairs();

  for (MetricId id : metrics) {
    MetricOrderCounts counts;
    counts.metric = id;
    for (const auto& record : records) {
      bool complete = true;
      for (const auto& source : sources) {
        if (!oriented_score(record, source, id)) complete = false;
      }
      if (!complete) continue;
      bool tied = false;
      const auto order = rank_sources(record, id, sources, &tied);
      ++counts.graphs;
      if (tied) ++counts.ties;
      for (std::size_t k = 0; k < 6; ++k) {
        if (perms[k] == order) ++counts.permutation_counts[k];
      }
      std::array<std::size_t, 3> position{};
      for (std::size_t r = 0; r < 3; ++r) position[order[r]] = r;
      for (std::size_t k = 0; k < 6; ++k) {
        if (position[pairs[k][0]] < position[pairs[k][1]]) ++counts.pair_counts[k];
      }
    }
    table.metrics.push_back(counts);
  }
  return table;
}

// ---- correlations ----------------------------------------------------------

double CorrelationTable::at(MetricId a, MetricId b) const {
  const auto ia = std::find(metrics.begin(), metrics.end(), a);
  const auto ib = std::find(metrics.begin(), metrics.end(), b);
  if (ia == metrics.end() || ib == metrics.end()) {
    throw InvalidArgument("metric pair not in correlation table");
  }
  const auto k = metrics.size();
  return values[static_cast<std::size_t>(ia - metrics.begin()) * k +
                static_cast<std::size_t>(ib - metrics.begin())];
}

CorrelationTable metric_correlations(std::span<const TrialRecord> records,
                                     std::span<const MetricId> metrics,
                                     const SourceTriple& sources) {
  if (records.size() < 2) throw InvalidArgument("correlations need at least 2 graphs");
  std::vector<const TrialRecord*> ordered;
  for (const auto& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TrialRecord* a, const TrialRecord* b) { return a->graph_id < b->graph_id; });

  CorrelationTable table;
  std::vector<std::vector<double>> series;
  for (MetricId id : metrics) {
    std::vector<double> values;
    bool complete = true;
    for (const auto* record : ordered) {
      for (const auto& source : sources) {
        auto s = oriented_score(*record, source, id);
        if (!s) {
          complete = false;
          break;
        }
        values.push_back(*s);
      }
      if (!complete) break;
    }
    if (!complete) continue;
    table.metrics.push_back(id);
    series.push_back(std::move(values));
  }

  const std::size_t k = table.metrics.size();
  table.values.assign(k * k, 1.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double r = spearman(series[a], series[b]);
      table.values[a * k + b] = r;
      table.values[b * k + a] = r;
    }
  }
  return table;
}

// ---- runtime ---------------------------------------------------------------

std::optional<double> BenchTable::slope(MetricId id) const {
  for (const auto& s : slopes) {
    if (s.metric == id) return s.slope;
  }
  return std::nullopt;
}

double log_log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InvalidArgument("slope needs at least two (x, y) points");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += std::log(xs[k]);
    sy += std::log(ys[k]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = std::log(xs[k]) - mx;
    sxy += dx * (std::log(ys[k]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("slope needs at least two distinct sizes");
  return sxy / sxx;
}

BenchTable runtime_benchmark(const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  if (options.repetitions < 3) throw InvalidArgument("runtime benchmark needs >= 3 repetitions");
  if (options.sizes.empty()) throw InvalidArgument("runtime benchmark needs at least one size");
  if (!std::is_sorted(options.sizes.begin(), options.sizes.end())) {
    throw InvalidArgument("benchmark sizes must be ascending");
  }
  for (std::size_t n : options.sizes) {
    if (n < 3) throw InvalidArgument("benchmark sizes must be >= 3");
  }
  const bool has_drs = std::find(options.metrics.begin(), options.metrics.end(),
                                 MetricId::kDistanceRatioStress) != options.metrics.end();
  if (has_drs && !options.force && options.sizes.back() > kDistanceRatioMaxVertices) {
    throw SizeGuardError("drs is O(n^4); size " + std::to_string(options.sizes.back()) +
                         " exceeds the guard of " + std::to_string(kDistanceRatioMaxVertices) +
                         " vertices (use --force)");
  }

  MetricOptions metric_options;
  metric_options.force_drs = options.force;
  BenchTable table;
  const Rng root(options.seed);
  for (std::size_t n : options.sizes) {
    Rng rng = root.split(n);
    // Average degree about 4.
    const Graph g = random_connected_graph(n, 2 * n, rng);
    const DistanceMatrix d = apsp(g);
    const Layout x = random_layout(n, rng.next());

    for (MetricId id : options.metrics) {
      volatile double sink = 0.0;
      auto evaluate = [&] {
        const LayoutDistances e = pairwise_distances(x);
        sink = evaluate_metric(id, e, d, metric_options).value;
      };
      evaluate();  // warm-up, discarded
      std::vector<double> samples;
      for (std::size_t r = 0; r < options.repetitions; ++r) {
        std::size_t calls = 0;
        const auto start = Clock::now();
        double elapsed = 0.0;
        do {
          evaluate();
          ++calls;
          elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        } while (elapsed < options.min_sample_seconds);
        samples.push_back(elapsed / static_cast<double>(calls));
      }
      std::sort(samples.begin(), samples.end());
      const std::size_t m = samples.size();
      const double median = m % 2 == 1 ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
      table.rows.push_back({n, id, median});
      (void)sink;
    }
  }
  if (options.sizes.size() >= 2) {
    for (MetricId id : options.metrics) {
      std::vector<double> xs, ys;
      for (const auto& row : table.rows) {
        if (row.metric == id) {
          xs.push_back(static_cast<double>(row.n));
          ys.push_back(row.median_seconds);
        }
      }
      table.slopes.push_back({id, log_log_slope(xs, ys)});
    }
  }
  return table;
}

// ---- config ----------------------------------------------------------------

namespace {

std::vector<MetricId> metrics_from_json(const json& j) {
  if (j.is_string()) return parse_metric_list(j.get<std::string>());
  if (!j.is_array()) throw InvalidArgument("metrics must be a string or an array of ids");
  std::string joined;
  for (const auto& item : j) {
    if (!joined.empty()) joined += ',';
    joined += item.get<std::string>();
  }
  return parse_metric_list(joined);
}

json metrics_to_json(std::span<const MetricId> metrics) {
  json arr = json::array();
  for (MetricId id : metrics) arr.push_back(std::string(metric_name(id)));
  return arr;
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> known,
                         std::string_view where) {
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw InvalidArgument("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 0);

  ExperimentConfig c;
  try {
    reject_unknown_keys(j, {"seed", "corpus", "metrics", "scale_policy", "optimizer_iterations", "runtime"},
                        "config");
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("corpus")) {
      const auto& cj = j["corpus"];
      reject_unknown_keys(cj, {"generate", "graphs", "min_vertices", "max_vertices", "edges_per_vertex", "density",
                           "directories"},
                          "corpus");
      c.generate = cj.value("generate", c.generate);
      c.corpus.graph_count = cj.value("graphs", c.corpus.graph_count);
      c.corpus.min_vertices = cj.value("min_vertices", c.corpus.min_vertices);
      c.corpus.max_vertices = cj.value("max_vertices", c.corpus.max_vertices);
      c.corpus.edges_per_vertex = cj.value("edges_per_vertex", c.corpus.edges_per_vertex);
      if (cj.contains("density") && !cj["density"].is_null()) {
        c.corpus.density = cj["density"].get<double>();
      }
      if (cj.contains("directories")) {
        for (const auto& p : cj["directories"]) c.graph_dirs.emplace_back(p.get<std::string>());
      }
    }
    if (j.contains("metrics")) c.metrics = metrics_from_json(j["metrics"]);
    if (j.contains("scale_policy")) {
      auto p = parse_scale_policy(j["scale_policy"].get<std::string>());
      if (!p) throw InvalidArgument("scale_policy must be 'as-is' or 'paper-like'");
      c.policy = *p;
    }
    c.optimizer_iterations = j.value("optimizer_iterations", c.optimizer_iterations);
    if (c.optimizer_iterations == 0) throw InvalidArgument("optimizer_iterations must be >= 1");
    if (j.contains("runtime")) {
      const auto& rj = j["runtime"];
      reject_unknown_keys(rj, {"enabled", "sizes", "drs_sizes", "metrics", "repetitions"}, "runtime");
      c.runtime.enabled = rj.value("enabled", c.runtime.enabled);
      if (rj.contains("sizes")) c.runtime.sizes = rj["sizes"].get<std::vector<std::size_t>>();
      if (rj.contains("drs_sizes")) c.runtime.drs_sizes = rj["drs_sizes"].get<std::vector<std::size_t>>();
      if (rj.contains("metrics")) c.runtime.metrics = metrics_from_json(rj["metrics"]);
      c.runtime.repetitions = rj.value("repetitions", c.runtime.repetitions);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad config value: ") + e.what(), 0);
  }
  if (!c.generate && c.graph_dirs.empty()) {
    throw InvalidArgument("config neither generates a corpus nor names graph directories");
  }
  return c;
}

namespace {

json config_to_json(const ExperimentConfig& c) {
  json dirs = json::array();
  for (const auto& p : c.graph_dirs) dirs.push_back(p.string());
  return json{
      {"seed", c.seed},
      {"corpus",
       {{"generate", c.generate},
        {"graphs", c.corpus.graph_count},
        {"min_vertices", c.corpus.min_vertices},
        {"max_vertices", c.corpus.max_vertices},
        {"edges_per_vertex", c.corpus.edges_per_vertex},
        {"density", c.corpus.density ? json(*c.corpus.density) : json(nullptr)},
        {"directories", dirs}}},
      {"metrics", metrics_to_json(c.metrics)},
      {"scale_policy", std::string(scale_policy_name(c.policy))},
      {"optimizer_iterations", c.optimizer_iterations},
      {"runtime",
       {{"enabled", c.runtime.enabled},
        {"sizes", c.runtime.sizes},
        {"drs_sizes", c.runtime.drs_sizes},
        {"metrics", metrics_to_json(c.runtime.metrics)},
        {"repetitions", c.runtime.repetitions}}},
  };
}

}  // namespace

std::string experiment_config_json(const ExperimentConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

// ---- full experiment -------------------------------------------------------

ExperimentResult run_experiment(const ExperimentConfig& config) {
  std::vector<CorpusGraph> corpus;
  if (config.generate) corpus = generate_corpus(config.seed, config.corpus);
  for (const auto& dir : config.graph_dirs) {
    auto loaded = load_corpus_directory(dir);
    corpus.insert(corpus.end(), std::make_move_iterator(loaded.begin()),
                  std::make_move_iterator(loaded.end()));
  }

  ExperimentResult result;
  for (const auto& entry : corpus) {
    try {
      const DistanceMatrix d = apsp(entry.graph);
      const auto layouts = standard_layouts(entry.graph, d, entry.seed, config.optimizer_iterations);
      result.records.push_back(
          run_trial(entry.id, entry.graph, d, layouts, config.metrics, config.policy));
    } catch (const Error& e) {
      result.failures.push_back({entry.id, e.what()});
    }
  }

  result.orders = order_frequencies(result.records, config.metrics);
  try {
    result.correlations = metric_correlations(result.records, config.metrics);
  } catch (const Error& e) {
    result.correlation_error = e.what();
  }

  if (config.runtime.enabled) {
    BenchTable merged;
    std::vector<MetricId> quadratic, quartic;
    for (MetricId id : config.runtime.metrics) {
      (id == MetricId::kDistanceRatioStress ? quartic : quadratic).push_back(id);
    }
    for (auto [metrics, sizes] : {std::pair{&quadratic, &config.runtime.sizes},
                                  std::pair{&quartic, &config.runtime.drs_sizes}}) {
      if (metrics->empty() || sizes->empty()) continue;
      BenchOptions bench;
      bench.sizes = *sizes;
      bench.metrics = *metrics;
      bench.repetitions = config.runtime.repetitions;
      bench.seed = config.seed;
      auto table = runtime_benchmark(bench);
      merged.rows.insert(merged.rows.end(), table.rows.begin(), table.rows.end());
      merged.slopes.insert(merged.slopes.end(), table.slopes.begin(), table.slopes.end());
    }
    result.runtime = std::move(merged);
  }

  result.checks = evaluate_checks(result, config.policy);
  return result;
}

std::vector<CheckResult> evaluate_checks(const ExperimentResult& result, ScalePolicy policy) {
  std::vector<CheckResult> checks;
  auto add = [&](std::string name, double value, std::string cmp, double threshold) {
    bool ok = false;
    if (cmp == ">=") ok = value >= threshold;
    if (cmp == "<=") ok = value <= threshold;
    if (cmp == ">") ok = value > threshold;
    if (cmp == "<") ok = value < threshold;
    checks.push_back({std::move(name), value, std::move(cmp), threshold, ok});
  };
  const auto& orders = result.orders;
  if (orders.sources != default_source_triple()) return checks;

  for (MetricId id : {MetricId::kScaleNormalizedStress, MetricId::kShepardConstantStress,
                      MetricId::kNonMetricStress}) {
    const auto* m = orders.find(id);
    if (m == nullptr || m->graphs == 0) continue;
    add(std::string(metric_name(id)) + " ground-truth order frequency",
        orders.ground_truth_frequency(id), ">=", 0.90);
  }
  if (policy == ScalePolicy::kPaperLike) {
    for (MetricId id : {MetricId::kRawStress, MetricId::kNormalizedStress,
                        MetricId::kKamadaKawaiStress}) {
      const auto* m = orders.find(id);
      if (m == nullptr || m->graphs == 0) continue;
      add(std::string(metric_name(id)) + " random-best frequency", orders.best_frequency(id, 2),
          ">=", 0.95);
      add(std::string(metric_name(id)) + " ground-truth order frequency",
          orders.ground_truth_frequency(id), "<=", 0.05);
    }
  }

  if (result.correlations) {
    const auto& c = *result.correlations;
    auto has = [&](MetricId id) {
      return std::find(c.metrics.begin(), c.metrics.end(), id) != c.metrics.end();
    };
    using enum MetricId;
    if (has(kScaleNormalizedStress) && has(kNonMetricStress)) {
      add("spearman(sns, nms)", c.at(kScaleNormalizedStress, kNonMetricStress), ">=", 0.8);
    }
    if (policy == ScalePolicy::kPaperLike) {
      if (has(kRawStress) && has(kNormalizedStress)) {
        add("spearman(rs, ns)", c.at(kRawStress, kNormalizedStress), ">=", 0.9);
      }
      if (has(kRawStress) && has(kScaleNormalizedStress)) {
        add("spearman(rs, sns)", c.at(kRawStress, kScaleNormalizedStress), "<=", -0.2);
      }
    }
  }

  // Shepard goodness contrast between best and worst drawings.
  double sum_opt = 0.0, sum_rand = 0.0;
  std::size_t count = 0;
  for (const auto& r : result.records) {
    const auto* opt = r.find(kOptimizedSource);
    const auto* rnd = r.find(kRandomSource);
    if (opt == nullptr || rnd == nullptr) continue;
    const auto* so = opt->find(MetricId::kShepardGoodness);
    const auto* sr = rnd->find(MetricId::kShepardGoodness);
    if (so == nullptr || sr == nullptr) continue;
    sum_opt += so->value;
    sum_rand += sr->value;
    ++count;
  }
  if (count > 0) {
    add("mean sgs(optimized)", sum_opt / static_cast<double>(count), ">", 0.8);
    add("mean sgs(random)", sum_rand / static_cast<double>(count), "<", 0.4);
  }

  if (result.runtime) {
    using enum MetricId;
    for (MetricId id : {kNormalizedStress, kScaleNormalizedStress, kShepardConstantStress}) {
      if (auto s = result.runtime->slope(id)) {
        add(std::string(metric_name(id)) + " runtime slope", *s, ">=", 1.6);
        add(std::string(metric_name(id)) + " runtime slope", *s, "<=", 2.4);
      }
    }
    if (auto s = result.runtime->slope(kDistanceRatioStress)) {
      add("drs runtime slope", *s, ">=", 3.4);
      add("drs runtime slope", *s, "<=", 4.6);
    }
  }
  return checks;
}

// ---- output ----------------------------------------------------------------

std::string output_tag(const ExperimentConfig& config) {
  return "seed" + std::to_string(config.seed) + "_" + std::string(scale_policy_name(config.policy));
}

std::string order_frequency_csv(const OrderFrequencyTable& table) {
  std::string out = "metric,kind,ordering,count,frequency\n";
  const auto pair_labels = table.pair_labels();
  const auto perm_labels = table.permutation_labels();
  for (const auto& m : table.metrics) {
    const std::string name(metric_name(m.metric));
    for (std::size_t k = 0; k < 6; ++k) {
      out += name + ",pair," + pair_labels[k] + "," + std::to_string(m.pair_counts[k]) + "," +
             detail::format_double(m.pair_frequency(k)) + "\n";
    }
    for (std::size_t k = 0; k < 6; ++k) {
      out += name + ",permutation," + perm_labels[k] + "," +
             std::to_string(m.permutation_counts[k]) + "," +
             detail::format_double(m.permutation_frequency(k)) + "\n";
    }
    out += name + ",ties,any," + std::to_string(m.ties) + "," +
           detail::format_double(m.graphs == 0 ? 0.0
                                               : static_cast<double>(m.ties) /
                                                     static_cast<double>(m.graphs)) +
           "\n";
  }
  return out;
}

std::string correlation_csv(const CorrelationTable& table) {
  std::string out = "row,col,spearman\n";
  const auto k = table.metrics.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      out += std::string(metric_name(table.metrics[a])) + "," +
             std::string(metric_name(table.metrics[b])) + "," +
             detail::format_double(table.values[a * k + b]) + "\n";
    }
  }
  return out;
}

std::string trials_csv(std::span<const TrialRecord> records) {
  std::string out = "graph,vertices,source,max_drawing_distance,metric,value,alpha_min,skipped\n";
  for (const auto& r : records) {
    for (const auto& l : r.layouts) {
      for (const auto& s : l.scores) {
        out += r.graph_id + "," + std::to_string(r.vertex_count) + "," + l.source + "," +
               detail::format_double(l.max_drawing_distance) + "," +
               std::string(metric_name(s.metric)) + "," +
               (s.skipped ? std::string() : detail::format_double(s.value)) + "," +
               (s.alpha_min ? detail::format_double(*s.alpha_min) : std::string()) + "," +
               (s.skipped ? "1" : "0") + "\n";
      }
    }
  }
  return out;
}

std::string bench_csv(const BenchTable& table) {
  std::string out = "n,metric,median_seconds,slope\n";
  for (const auto& row : table.rows) {
    auto slope = table.slope(row.metric);
    out += std::to_string(row.n) + "," + std::string(metric_name(row.metric)) + "," +
           detail::format_double(row.median_seconds) + "," +
           (slope ? detail::format_double(*slope) : std::string()) + "\n";
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

std::string timings_csv(std::span<const TrialRecord> records) {
  std::string out = "graph,source,metric,seconds\n";
  for (const auto& r : records) {
    for (const auto& l : r.layouts) {
      for (const auto& s : l.scores) {
        if (s.skipped) continue;
        out += r.graph_id + "," + l.source + "," + std::string(metric_name(s.metric)) + "," +
               detail::format_double(s.seconds) + "\n";
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::filesystem::path> write_experiment_outputs(const ExperimentResult& result,
                                                            const ExperimentConfig& config,
                                                            const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string tag = output_tag(config);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& stem, const std::string& ext, const std::string& text) {
    auto path = dir / (stem + "_" + tag + ext);
    write_text(path, text);
    written.push_back(path);
  };

  emit("order_frequencies", ".csv", order_frequency_csv(result.orders));
  if (result.correlations) emit("correlations", ".csv", correlation_csv(*result.correlations));
  emit("trials", ".csv", trials_csv(result.records));

  json summary;
  summary["config"] = config_to_json(config);
  summary["graphs"] = result.records.size() + result.failures.size();
  summary["trials_completed"] = result.records.size();
  json failures = json::array();
  for (const auto& f : result.failures) failures.push_back({{"graph", f.graph_id}, {"error", f.message}});
  summary["failures"] = failures;
  json orders = json::object();
  for (const auto& m : result.orders.metrics) {
    if (m.graphs == 0) continue;
    orders[std::string(metric_name(m.metric))] = {
        {"graphs", m.graphs},
        {"ground_truth_frequency", m.permutation_frequency(0)},
        {"random_best_frequency", result.orders.best_frequency(m.metric, 2)},
        {"ties", m.ties}};
  }
  summary["ordering"] = orders;
  if (result.correlations) {
    json corr = json::object();
    const auto& c = *result.correlations;
    for (std::size_t a = 0; a < c.metrics.size(); ++a) {
      for (std::size_t b = a + 1; b < c.metrics.size(); ++b) {
        corr[std::string(metric_name(c.metrics[a])) + "," + std::string(metric_name(c.metrics[b]))] =
            c.values[a * c.metrics.size() + b];
      }
    }
    summary["correlations"] = corr;
  } else if (result.correlation_error) {
    summary["correlation_error"] = *result.correlation_error;
  }
  json checks = json::array();
  for (const auto& ch : result.checks) {
    // Runtime checks depend on the clock; they stay in the runtime file.
    if (ch.name.find("runtime") != std::string::npos) continue;
    checks.push_back({{"name", ch.name},
                      {"value", ch.value},
                      {"comparison", ch.comparison},
                      {"threshold", ch.threshold},
                      {"passed", ch.passed}});
  }
  summary["checks"] = checks;
  emit("summary", ".json", summary.dump(2) + "\n");

  emit("timings", ".csv", timings_csv(result.records));
  if (result.runtime) emit("runtime", ".csv", bench_csv(*result.runtime));
  return written;
}

}  // namespace stressmetrics
