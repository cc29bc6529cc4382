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

// Evaluation harness: score several drawings of many graphs with every
// metric, then ask how often each metric ranks the drawings in the expected
// order and how the metrics correlate with each other.

#ifndef STRESSMETRICS_EXPERIMENT_HPP_
#define STRESSMETRICS_EXPERIMENT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stressmetrics/graph.hpp"
#include "stressmetrics/layout.hpp"
#include "stressmetrics/metrics.hpp"
#include "stressmetrics/random.hpp"

namespace stressmetrics {

inline constexpr std::string_view kOptimizedSource = "optimized";
inline constexpr std::string_view kForceSource = "force";
inline constexpr std::string_view kCircleSource = "circle";
inline constexpr std::string_view kRandomSource = "random";

enum class ScalePolicy {
  // Score drawings at the scale they arrive in.
  kAsIs,
  // Bundled optimized, force and circle drawings rescaled to a max drawing
  // distance of kPaperLikeMaxDistance; random stays in the unit square;
  // any other source is left alone.
  kPaperLike,
};

inline constexpr double kPaperLikeMaxDistance = 800.0;

std::string_view scale_policy_name(ScalePolicy p);  // "as-is", "paper-like"
std::optional<ScalePolicy> parse_scale_policy(std::string_view name);

// ---- corpus ----------------------------------------------------------------

struct CorpusOptions {
  std::size_t graph_count = 50;
  std::size_t min_vertices = 20;
  std::size_t max_vertices = 60;
  // Edges per graph: round(edges_per_vertex * n), or density * C(n, 2) when
  // density is set. Never fewer than n - 1.
  double edges_per_vertex = 1.2;
  std::optional<double> density;

  std::size_t edge_target(std::size_t n) const;
};

struct CorpusGraph {
  std::string id;
  Graph graph;
  std::uint64_t seed = 0;
};

/**
 * Connected graph with `edges` edges, clamped to [n - 1, C(n, 2)]. A random
 * spanning tree guarantees connectivity, uniform extra edges fill up to the
 * target, and vertices are then relabelled in breadth-first order from
 * vertex 0 so ids carry some locality.
 */
Graph random_connected_graph(std::size_t n, std::size_t edges, Rng& rng);

std::vector<CorpusGraph> generate_corpus(std::uint64_t seed, const CorpusOptions& options = {});

// Every regular file in `dir` (sorted by name): *.mtx as Matrix Market,
// anything else as an edge list; reduced to its largest component.
std::vector<CorpusGraph> load_corpus_directory(const std::filesystem::path& dir);

// ---- trials ----------------------------------------------------------------

struct NamedLayout {
  std::string source;
  Layout layout;
};

// optimized, force, random, in that (ground-truth) order.
std::vector<NamedLayout> standard_layouts(const Graph& g, const DistanceMatrix& d,
                                          std::uint64_t seed, std::size_t iterations = 100);

struct MetricScore {
  MetricId metric = MetricId::kRawStress;
  double value = 0.0;
  std::optional<double> alpha_min;
  double seconds = 0.0;
  bool skipped = false;  // DRS above its size guard
};

struct LayoutScores {
  std::string source;
  double max_drawing_distance = 0.0;
  std::vector<MetricScore> scores;

  const MetricScore* find(MetricId id) const;
};

struct TrialRecord {
  std::string graph_id;
  std::size_t vertex_count = 0;
  std::vector<LayoutScores> layouts;

  const LayoutScores* find(std::string_view source) const;
};

Layout apply_scale_policy(std::string_view source, const Layout& x, ScalePolicy policy);

TrialRecord run_trial(std::string graph_id, const Graph& g, const DistanceMatrix& d,
                      std::span<const NamedLayout> layouts, std::span<const MetricId> metrics,
                      ScalePolicy policy, const MetricOptions& options = {});

TrialRecord run_trial(std::string graph_id, const Graph& g, std::span<const NamedLayout> layouts,
                      std::span<const MetricId> metrics, ScalePolicy policy,
                      const MetricOptions& options = {});

// ---- ordering frequencies --------------------------------------------------

using SourceTriple = std::array<std::string, 3>;

inline SourceTriple default_source_triple() {
  return {std::string(kOptimizedSource), std::string(kForceSource), std::string(kRandomSource)};
}

struct MetricOrderCounts {
  MetricId metric = MetricId::kRawStress;
  std::size_t graphs = 0;
  // Graphs where some pair of sources scored exactly equal; such ties are
  // broken by source name before counting.
  std::size_t ties = 0;
  // Indexed like OrderFrequencyTable::pair_labels / permutation_labels.
  std::array<std::size_t, 6> pair_counts{};
  std::array<std::size_t, 6> permutation_counts{};

  double pair_frequency(std::size_t k) const;
  double permutation_frequency(std::size_t k) const;
};

struct OrderFrequencyTable {
  // Ground-truth order, best first.
  SourceTriple sources;
  std::vector<MetricOrderCounts> metrics;

  // "A<B" for the six ordered pairs, and "A<B<C" for the six permutations.
  // Permutation 0 is the ground truth.
  std::array<std::string, 6> pair_labels() const;
  std::array<std::string, 6> permutation_labels() const;
  static std::array<std::array<std::size_t, 3>, 6> permutations();
  static std::array<std::array<std::size_t, 2>, 6> ordered_pairs();

  const MetricOrderCounts* find(MetricId id) const;
  // Share of graphs ranked exactly in ground-truth order.
  double ground_truth_frequency(MetricId id) const;
  // Share of graphs where `sources[source_index]` ranks best.
  double best_frequency(MetricId id, std::size_t source_index) const;
};

// Sources ordered best-first by one metric; ties broken by source name.
std::array<std::size_t, 3> rank_sources(const TrialRecord& record, MetricId id,
                                        const SourceTriple& sources, bool* tied = nullptr);

OrderFrequencyTable order_frequencies(std::span<const TrialRecord> records,
                                      std::span<const MetricId> metrics,
                                      const SourceTriple& sources = default_source_triple());

// ---- correlations ----------------------------------------------------------

struct CorrelationTable {
  std::vector<MetricId> metrics;
  std::vector<double> values;  // row-major k x k

  double at(MetricId a, MetricId b) const;
};

/**
 * Spearman correlation between every pair of metrics over scores pooled
 * across (graph x source). Records are visited in graph-id order. SGS is
 * negated first so that "better" points the same way for every metric.
 * Metrics skipped on any record are left out of the table.
 */
CorrelationTable metric_correlations(std::span<const TrialRecord> records,
                                     std::span<const MetricId> metrics,
                                     const SourceTriple& sources = default_source_triple());

// ---- runtime ---------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::vector<MetricId> metrics;
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  // Each repetition loops the evaluation until at least this much time has
  // passed, then reports time per evaluation.
  double min_sample_seconds = 0.02;
  bool force = false;  // DRS size guard
};

struct BenchRow {
  std::size_t n = 0;
  MetricId metric = MetricId::kRawStress;
  double median_seconds = 0.0;
};

struct BenchSlope {
  MetricId metric = MetricId::kRawStress;
  double slope = 0.0;  // least-squares slope of log(time) against log(n)
};

struct BenchTable {
  std::vector<BenchRow> rows;
  std::vector<BenchSlope> slopes;

  std::optional<double> slope(MetricId id) const;
};

// Times pairwise_distances + metric on a random drawing of a random
// connected graph per size.
BenchTable runtime_benchmark(const BenchOptions& options);

double log_log_slope(std::span<const double> xs, std::span<const double> ys);

// ---- full experiment -------------------------------------------------------

struct RuntimeConfig {
  bool enabled = false;
  std::vector<std::size_t> sizes = {100, 200, 400, 800};
  std::vector<std::size_t> drs_sizes = {10, 20, 30, 40, 50};
  // drs is timed on drs_sizes, everything else on sizes.
  std::vector<MetricId> metrics = {MetricId::kNormalizedStress,
                                   MetricId::kScaleNormalizedStress,
                                   MetricId::kShepardConstantStress,
                                   MetricId::kDistanceRatioStress};
  std::size_t repetitions = 5;
};

struct ExperimentConfig {
  std::uint64_t seed = 20240501;
  CorpusOptions corpus;
  bool generate = true;
  std::vector<std::filesystem::path> graph_dirs;
  std::vector<MetricId> metrics{kAllMetrics.begin(), kAllMetrics.end()};
  ScalePolicy policy = ScalePolicy::kPaperLike;
  std::size_t optimizer_iterations = 100;
  RuntimeConfig runtime;
};

// Parses the JSON config; absent keys keep their defaults.
ExperimentConfig parse_experiment_config(std::string_view json_text);
std::string experiment_config_json(const ExperimentConfig& config);

struct TrialFailure {
  std::string graph_id;
  std::string message;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::string comparison;  // ">=" or "<=" or ">" or "<"
  double threshold = 0.0;
  bool passed = false;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<TrialFailure> failures;
  OrderFrequencyTable orders;
  std::optional<CorrelationTable> correlations;
  std::optional<std::string> correlation_error;
  std::optional<BenchTable> runtime;
  std::vector<CheckResult> checks;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Ordering, correlation and Shepard-contrast thresholds for the bundled
// optimized/force/random triple.
// Scale-sensitive expectations (random ranked best, RS anti-correlated with
// SNS) are only checked under the paper-like policy.
std::vector<CheckResult> evaluate_checks(const ExperimentResult& result, ScalePolicy policy);

// File stem suffix, e.g. "seed20240501_paper-like".
std::string output_tag(const ExperimentConfig& config);

// Writes the tables; returns the paths written. Runtime numbers go to their
// own file since they are the only non-deterministic output.
std::vector<std::filesystem::path> write_experiment_outputs(const ExperimentResult& result,
                                                            const ExperimentConfig& config,
                                                            const std::filesystem::path& dir);

std::string order_frequency_csv(const OrderFrequencyTable& table);
std::string correlation_csv(const CorrelationTable& table);
std::string trials_csv(std::span<const TrialRecord> records);
std::string bench_csv(const BenchTable& table);

}  // namespace stressmetrics

#endif  // STRESSMETRICS_EXPERIMENT_HPP_
