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

// The `stressmetrics` command: compute, curve, experiment and bench.

#ifndef STRESSMETRICS_CLI_HPP_
#define STRESSMETRICS_CLI_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stressmetrics/graph.hpp"

namespace stressmetrics::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitCheckFailed = 3,
};

// Relative --out paths resolve against this directory when it is set.
inline constexpr const char* kOutDirEnv = "STRESSMETRICS_OUT_DIR";

struct AlphaGrid {
  double start = 0.1;
  double stop = 10.0;
  std::size_t count = 50;
  bool log = true;

  std::vector<double> values() const;
};

// "start:stop:count[:log|linear]"; start, stop > 0 and count >= 2.
AlphaGrid parse_alpha_grid(std::string_view text);

struct LoadedGraph {
  std::filesystem::path path;
  std::size_t input_vertices = 0;
  std::size_t self_loops_dropped = 0;
  // Largest component, renumbered; original_ids is the remap table.
  Component component;
};

// *.mtx as Matrix Market, anything else as an edge list. Parse errors come
// back as ParseError whose message starts with the file name.
LoadedGraph load_graph_file(const std::filesystem::path& path);

std::filesystem::path resolve_output_path(const std::filesystem::path& out);

// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stressmetrics::cli

#endif  // STRESSMETRICS_CLI_HPP_
