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

#include "stressmetrics/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stressmetrics/error.hpp"
#include "stressmetrics/experiment.hpp"
#include "stressmetrics/layout.hpp"
#include "stressmetrics/metrics.hpp"
#include "format_util.hpp"
#include "text_util.hpp"

namespace stressmetrics::cli {

using json = nlohmann::ordered_json;

namespace {

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

// Stdout when no --out was given.
void emit(const std::string& out_flag, const std::string& text, std::ostream& out) {
  if (out_flag.empty()) {
    out << text;
  } else {
    write_file(resolve_output_path(out_flag), text);
  }
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

Layout load_layout(const std::filesystem::path& path, const LoadedGraph& g) {
  try {
    const auto rows = parse_layout_csv(read_file(path));
    return layout_from_rows(rows, g.component.original_ids);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

enum class Format { kJson, kCsv };

const std::map<std::string, Format> kFormats = {{"json", Format::kJson}, {"csv", Format::kCsv}};
const std::map<std::string, ScalePolicy> kPolicies = {{"as-is", ScalePolicy::kAsIs},
                                                      {"paper-like", ScalePolicy::kPaperLike}};

// ---- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string graph;
  std::vector<std::string> layouts;
  std::string metrics = "all";
  std::optional<double> l0;
  bool force = false;
  std::string out;
  Format format = Format::kJson;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  const auto metrics = parse_metric_list(a.metrics);
  const LoadedGraph g = load_graph_file(a.graph);
  const DistanceMatrix d = apsp(g.component.graph);
  MetricOptions options;
  options.kk_l0 = a.l0;
  options.force_drs = a.force;

  json report;
  report["config"] = {{"command", "compute"},
                      {"graph", a.graph},
                      {"layouts", a.layouts},
                      {"metrics", a.metrics},
                      {"l0", number_or_null(a.l0)},
                      {"force", a.force}};
  report["graph"] = {{"path", a.graph},
                     {"input_vertices", g.input_vertices},
                     {"self_loops_dropped", g.self_loops_dropped},
                     {"vertices", g.component.graph.vertex_count()},
                     {"edges", g.component.graph.edge_count()}};
  report["remap"] = g.component.original_ids;

  std::string csv = "layout,metric,value,alpha_min,seconds\n";
  json layouts = json::array();
  for (const auto& path : a.layouts) {
    const Layout x = load_layout(path, g);
    const LayoutDistances e = pairwise_distances(x);
    json scores = json::object();
    for (MetricId id : metrics) {
      const auto start = std::chrono::steady_clock::now();
      const MetricValue v = evaluate_metric(id, e, d, options);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string name(metric_name(id));
      scores[name] = {{"value", v.value}, {"alpha_min", number_or_null(v.alpha_min)},
                      {"seconds", seconds}};
      csv += path + "," + name + "," + detail::format_double(v.value) + "," +
             (v.alpha_min ? detail::format_double(*v.alpha_min) : std::string()) + "," +
             detail::format_double(seconds) + "\n";
    }
    layouts.push_back({{"path", path},
                       {"max_drawing_distance", max_drawing_distance(e)},
                       {"metrics", scores}});
  }
  report["layouts"] = layouts;
  emit(a.out, a.format == Format::kJson ? report.dump(2) + "\n" : csv, out);
  return kExitOk;
}

// ---- curve -----------------------------------------------------------------

struct CurveArgs {
  std::string graph;
  std::string layout;
  std::string metric = "ns";
  std::string grid = "0.1:10:50:log";
  std::optional<double> l0;
  bool force = false;
  std::string out;
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
  const auto id = parse_metric_id(a.metric);
  if (!id) throw InvalidArgument("unknown metric '" + a.metric + "'");
  const auto alphas = parse_alpha_grid(a.grid).values();
  const LoadedGraph g = load_graph_file(a.graph);
  const DistanceMatrix d = apsp(g.component.graph);
  const Layout x = load_layout(a.layout, g);
  MetricOptions options;
  options.kk_l0 = a.l0;
  options.force_drs = a.force;

  std::string csv = "alpha,value\n";
  for (const auto& p : stress_curve(x, d, *id, alphas, options)) {
    csv += detail::format_double(p.alpha) + "," + detail::format_double(p.value) + "\n";
  }
  emit(a.out, csv, out);
  return kExitOk;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<ScalePolicy> policy;
  std::string metrics;
  bool runtime = false;
  std::string out = "results";
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  ExperimentConfig config;
  if (!a.config.empty()) {
    try {
      config = parse_experiment_config(read_file(a.config));
    } catch (const ParseError& e) {
      throw ParseError(a.config + ": " + e.what(), 0);
    }
  }
  if (a.seed) config.seed = *a.seed;
  if (a.policy) config.policy = *a.policy;
  if (!a.metrics.empty()) config.metrics = parse_metric_list(a.metrics);
  if (a.runtime) config.runtime.enabled = true;

  const ExperimentResult result = run_experiment(config);
  const auto dir = resolve_output_path(a.out);
  for (const auto& path : write_experiment_outputs(result, config, dir)) {
    out << "wrote " << path.string() << "\n";
  }

  const std::size_t total = result.records.size() + result.failures.size();
  for (const auto& f : result.failures) out << "trial failed: " << f.graph_id << ": " << f.message << "\n";
  if (result.correlation_error) out << "correlations unavailable: " << *result.correlation_error << "\n";

  bool all_passed = true;
  for (const auto& c : result.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << detail::format_double(c.value) << " "
        << c.comparison << " " << detail::format_double(c.threshold) << "\n";
    all_passed = all_passed && c.passed;
  }
  if (total > 0 && 10 * result.failures.size() > total) {
    out << result.failures.size() << " of " << total << " trials failed\n";
    return kExitInput;
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "100,200,400,800";
  std::string metrics = "ns";
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  bool force = false;
  std::string out;
  Format format = Format::kCsv;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions options;
  for (auto token : detail::split(a.sizes, ',')) {
    auto n = to_size(detail::trim(token));
    if (!n) throw InvalidArgument("bad size '" + std::string(token) + "' in --sizes");
    options.sizes.push_back(*n);
  }
  options.metrics = parse_metric_list(a.metrics);
  options.repetitions = a.repetitions;
  options.seed = a.seed;
  options.force = a.force;
  const BenchTable table = runtime_benchmark(options);

  std::string text;
  if (a.format == Format::kCsv) {
    text = bench_csv(table);
  } else {
    json rows = json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"n", r.n}, {"metric", metric_name(r.metric)}, {"median_seconds", r.median_seconds}});
    }
    json slopes = json::object();
    for (const auto& s : table.slopes) slopes[std::string(metric_name(s.metric))] = s.slope;
    json report;
    report["config"] = {{"command", "bench"}, {"sizes", options.sizes}, {"metrics", a.metrics},
                        {"repetitions", a.repetitions}, {"seed", a.seed}, {"force", a.force}};
    report["rows"] = rows;
    report["slopes"] = slopes;
    text = report.dump(2) + "\n";
  }
  emit(a.out, text, out);
  if (!a.out.empty()) {
    for (const auto& s : table.slopes) {
      out << metric_name(s.metric) << " log-log slope " << detail::format_double(s.slope) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

std::vector<double> AlphaGrid::values() const {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = log ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  // Pin the ends against rounding.
  out.front() = start;
  out.back() = stop;
  return out;
}

AlphaGrid parse_alpha_grid(std::string_view text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw InvalidArgument("alpha grid must be start:stop:count[:log|linear]");
  }
  AlphaGrid g;
  auto start = to_double(parts[0]);
  auto stop = to_double(parts[1]);
  auto count = to_size(parts[2]);
  if (!start || !stop || !count) throw InvalidArgument("malformed alpha grid '" + std::string(text) + "'");
  if (!(*start > 0.0) || !(*stop > 0.0) || !std::isfinite(*start) || !std::isfinite(*stop)) {
    throw InvalidArgument("alpha grid bounds must be positive and finite");
  }
  if (*count < 2) throw InvalidArgument("alpha grid needs at least 2 points");
  g.start = *start;
  g.stop = *stop;
  g.count = *count;
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] == "linear") {
      g.log = false;
    } else {
      throw InvalidArgument("alpha grid spacing must be 'log' or 'linear'");
    }
  }
  return g;
}

LoadedGraph load_graph_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  LoadedGraph out;
  out.path = path;
  Graph g;
  try {
    if (path.extension() == ".mtx") {
      g = parse_matrix_market(text);
    } else {
      auto parsed = parse_edge_list(text);
      g = std::move(parsed.graph);
      out.self_loops_dropped = parsed.self_loops_dropped;
    }
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  out.input_vertices = g.vertex_count();
  out.component = largest_connected_component(g);
  return out;
}

std::filesystem::path resolve_output_path(const std::filesystem::path& out) {
  if (out.is_absolute()) return out;
  const char* dir = std::getenv(kOutDirEnv);
  if (dir == nullptr || *dir == '\0') return out;
  return std::filesystem::path(dir) / out;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stress-based quality metrics for graph drawings", "stressmetrics"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Score layouts of one graph");
  c->add_option("graph", compute.graph, "Edge list or .mtx file")->required();
  c->add_option("layouts", compute.layouts, "Layout CSV files (id,x,y)")->required();
  c->add_option("--metrics", compute.metrics, "Comma-separated metric ids or 'all'");
  c->add_option("--l0", compute.l0, "Kamada-Kawai L0 override")->check(CLI::PositiveNumber);
  c->add_flag("--force", compute.force, "Allow distance-ratio stress above its size guard");
  c->add_option("--out", compute.out, "Report path (default stdout)");
  c->add_option("--format", compute.format, "json or csv")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  CurveArgs curve;
  auto* cu = app.add_subcommand("curve", "Metric value against uniform scale factor");
  cu->add_option("graph", curve.graph, "Edge list or .mtx file")->required();
  cu->add_option("layout", curve.layout, "Layout CSV file")->required();
  cu->add_option("--metrics", curve.metric, "One metric id");
  cu->add_option("--alpha-grid", curve.grid, "start:stop:count[:log|linear]");
  cu->add_option("--l0", curve.l0, "Kamada-Kawai L0 override, scaled with the drawing")
      ->check(CLI::PositiveNumber);
  cu->add_flag("--force", curve.force, "Allow distance-ratio stress above its size guard");
  cu->add_option("--out", curve.out, "CSV path (default stdout)");

  ExperimentArgs experiment;
  auto* ex = app.add_subcommand("experiment", "Run the ordering and correlation experiment");
  ex->add_option("config", experiment.config, "JSON config (defaults when omitted)");
  ex->add_option("--seed", experiment.seed, "Corpus seed override");
  ex->add_option("--scale-policy", experiment.policy, "as-is or paper-like")
      ->transform(CLI::CheckedTransformer(kPolicies));
  ex->add_option("--metrics", experiment.metrics, "Comma-separated metric ids or 'all'");
  ex->add_flag("--runtime", experiment.runtime, "Also run the runtime benchmark");
  ex->add_option("--out", experiment.out, "Output directory");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time metrics over graph sizes");
  b->add_option("--sizes", bench.sizes, "Comma-separated ascending vertex counts");
  b->add_option("--metrics", bench.metrics, "Comma-separated metric ids or 'all'");
  b->add_option("--reps", bench.repetitions, "Repetitions per size (>= 3)");
  b->add_option("--seed", bench.seed, "Graph and layout seed");
  b->add_flag("--force", bench.force, "Allow distance-ratio stress above its size guard");
  b->add_option("--out", bench.out, "Table path (default stdout)");
  b->add_option("--format", bench.format, "json or csv")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "stressmetrics: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c) return cmd_compute(compute, out);
    if (*cu) return cmd_curve(curve, out);
    if (*ex) return cmd_experiment(experiment, out);
    return cmd_bench(bench, out);
  } catch (const Error& e) {
    err << "stressmetrics: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "stressmetrics: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace stressmetrics::cli
