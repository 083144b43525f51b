// Copyright 2026 The cocoe Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cocoe/measures.hpp"
#include "cocoe/profiler.hpp"
#include "cocoe/representations.hpp"
#include "cocoe/taxonomy.hpp"
#include "cocoe/walker.hpp"

namespace cocoe {

// Everything one run needs; replaying the same manifest on the same inputs
// reproduces the output tree byte for byte.
struct RunManifest {
  std::vector<std::string> inputs;
  std::string label;  // defaults to the first input's stem, or "all"
  std::vector<std::uint32_t> lengths = {2, 10, 20};
  std::vector<std::uint32_t> radii = {0, 1};
  std::vector<Heuristic> heuristics = {Heuristic::kH1, Heuristic::kH2,
                                       Heuristic::kH3, Heuristic::kH4};
  std::size_t dims = 250;
  double sim_epsilon = 0.5;
  double cluster_eps_percentile = 75.0;
  std::uint64_t seed = 42;
  bool strict = false;
  int threads = 1;
  bool dump_samples = false;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
  static RunManifest from_json_file(const std::string& path);

  std::string dataset_label() const;
  std::vector<WalkConfig> grid() const;
};

// All representations of one dataset.
struct Representations {
  TripleSet triples;
  DistMatrix matrix_full;   // with chi-squared scores
  DistMatrix matrix_reduced;
  TermGraph weighted;       // G_w
  TermGraph similarity;     // G_s
  Taxonomy tax_w;
  Taxonomy tax_s;
  GlobalStats stats;        // of G_w
  bool cache_hit = false;
};

// Ingest the manifest's inputs (merging when there are several) and build
// every representation. Honors the COCOE_CACHE_DIR env var for the
// matrix/graph cache. Progress lines go to `log` when non-null.
Representations build_representations(const RunManifest& manifest,
                                      std::ostream* log = nullptr);

struct AnalyzeResult {
  DatasetProfile profile;
  std::vector<std::string> files_written;
};

// The full run: ingest, representations, taxonomies, walk batch, measures,
// aggregation, report files under out_dir.
AnalyzeResult run_analyze(const RunManifest& manifest,
                          const std::string& out_dir,
                          std::ostream* log = nullptr);

// Walks + measures for a prepared dataset (no file output).
struct BatchOutput {
  std::vector<MeasureRecord> records;
  std::vector<std::vector<Walk>> walks_per_config;
  std::vector<std::uint64_t> scheduled;  // sample count per config
  std::uint64_t path_constant = 1;       // k in the sample-count formula
};
BatchOutput run_measured_batch(const Representations& reps,
                               const std::vector<WalkConfig>& grid,
                               std::uint64_t seed, int threads);

}  // namespace cocoe
