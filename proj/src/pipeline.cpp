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

#include "cocoe/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "cocoe/cache.hpp"
#include "cocoe/errors.hpp"
#include "cocoe/ntriples.hpp"

namespace cocoe {

namespace {

using Json = nlohmann::ordered_json;

std::string stem_of(const std::string& path) {
  auto stem = std::filesystem::path(path).filename().string();
  // chop every extension: data.nt.gz -> data
  auto dot = stem.find('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return stem.empty() ? "dataset" : stem;
}

}  // namespace

std::string RunManifest::dataset_label() const {
  if (!label.empty()) return label;
  if (inputs.size() > 1) return "all";
  return inputs.empty() ? "dataset" : stem_of(inputs.front());
}

std::vector<WalkConfig> RunManifest::grid() const {
  return make_grid(lengths, radii, heuristics,
                   {TaxonomySource::kWeighted, TaxonomySource::kSimilarity});
}

std::string RunManifest::to_json() const {
  Json j;
  j["schema_version"] = 1;
  j["inputs"] = inputs;
  j["label"] = label;
  j["lengths"] = lengths;
  j["radii"] = radii;
  j["heuristics"] = Json::array();
  for (Heuristic h : heuristics) j["heuristics"].push_back(to_string(h));
  j["dims"] = dims;
  j["sim_epsilon"] = sim_epsilon;
  j["cluster_eps_percentile"] = cluster_eps_percentile;
  j["seed"] = seed;
  j["strict"] = strict;
  // The worker count is an execution detail with no effect on results, so
  // it stays out of the replayable manifest.
  j["dump_samples"] = dump_samples;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  Json j = Json::parse(text);
  RunManifest m;
  m.inputs = j.at("inputs").get<std::vector<std::string>>();
  m.label = j.value("label", std::string());
  m.lengths = j.at("lengths").get<std::vector<std::uint32_t>>();
  m.radii = j.at("radii").get<std::vector<std::uint32_t>>();
  m.heuristics.clear();
  for (const auto& h : j.at("heuristics")) {
    const auto s = h.get<std::string>();
    if (s == "H1") m.heuristics.push_back(Heuristic::kH1);
    else if (s == "H2") m.heuristics.push_back(Heuristic::kH2);
    else if (s == "H3") m.heuristics.push_back(Heuristic::kH3);
    else if (s == "H4") m.heuristics.push_back(Heuristic::kH4);
    else throw Error("unknown heuristic in manifest: " + s);
  }
  m.dims = j.at("dims").get<std::size_t>();
  m.sim_epsilon = j.at("sim_epsilon").get<double>();
  m.cluster_eps_percentile = j.at("cluster_eps_percentile").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.strict = j.value("strict", false);
  m.threads = j.value("threads", 1);
  m.dump_samples = j.value("dump_samples", false);
  return m;
}

RunManifest RunManifest::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open manifest");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

Representations build_representations(const RunManifest& manifest,
                                      std::ostream* log) {
  if (manifest.inputs.empty()) throw Error("no input files given");

  std::vector<TripleSet> parts;
  for (const auto& path : manifest.inputs) {
    ParseOptions opts;
    opts.strict = manifest.strict;
    auto result = parse_ntriples_file(path, stem_of(path), opts);
    if (log) {
      *log << "ingest " << path << ": " << result.triples.size()
           << " triples, " << result.skipped_lines << " skipped\n";
    }
    parts.push_back(std::move(result.triples));
  }

  Representations reps;
  reps.triples = parts.size() == 1
                     ? std::move(parts.front())
                     : merge_datasets(parts, manifest.dataset_label());

  const char* cache_dir = std::getenv("COCOE_CACHE_DIR");
  std::string cache_path;
  bool loaded = false;
  if (cache_dir && *cache_dir) {
    cache_path = cache_file_path(cache_dir, cache_key(reps.triples));
    if (auto cached = load_cache(cache_path)) {
      reps.matrix_full = std::move(cached->matrix);
      reps.weighted = std::move(cached->weighted);
      loaded = true;
      reps.cache_hit = true;
      if (log) *log << "cache hit: " << cache_path << "\n";
    }
  }
  if (!loaded) {
    auto direct = build_direct_graph(reps.triples);
    reps.matrix_full = build_dist_matrix(direct);
    reps.weighted = build_weighted_graph(direct, reps.matrix_full);
    if (!cache_path.empty()) {
      save_cache(RepresentationCache{reps.matrix_full, reps.weighted},
                 cache_path);
      if (log) *log << "cache stored: " << cache_path << "\n";
    }
  }

  reps.matrix_reduced = reduce_dimensions(reps.matrix_full, manifest.dims);
  reps.similarity =
      build_similarity_graph(reps.matrix_reduced, manifest.sim_epsilon);

  const StatsMode mode = reps.weighted.num_nodes() <= 5000
                             ? StatsMode::kExact
                             : StatsMode::kEstimate;
  reps.stats = global_stats(reps.weighted.graph, mode);

  const auto policy =
      EpsilonPolicy::percentile(manifest.cluster_eps_percentile);
  if (reps.weighted.num_nodes() > 0) {
    reps.tax_w =
        build_taxonomy(reps.weighted.graph, policy, TaxonomySource::kWeighted);
    reps.tax_s = build_taxonomy(reps.similarity.graph, policy,
                                TaxonomySource::kSimilarity);
  }
  if (log) {
    *log << "dataset " << manifest.dataset_label() << ": |V|="
         << reps.stats.num_nodes << " |E|=" << reps.stats.num_edges
         << " |C|=" << reps.stats.num_components
         << " levels(Tw)=" << reps.tax_w.num_levels()
         << " levels(Ts)=" << reps.tax_s.num_levels() << "\n";
  }
  return reps;
}

BatchOutput run_measured_batch(const Representations& reps,
                               const std::vector<WalkConfig>& grid,
                               std::uint64_t seed, int threads) {
  BatchOutput out;
  out.path_constant = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::floor(reps.stats.avg_shortest_path)));

  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const WalkConfig& cfg = grid[ci];
    const Taxonomy& tax = cfg.taxonomy_source == TaxonomySource::kWeighted
                              ? reps.tax_w
                              : reps.tax_s;
    const std::uint64_t n =
        sample_count(reps.weighted.num_nodes(), cfg.length, out.path_constant);
    out.scheduled.push_back(n);

    std::vector<Walk> walks(n);
    std::vector<MeasureRecord> records(n);
    run_indexed(n, threads, [&](std::uint64_t wi) {
      Rng rng(walk_seed(seed, cfg, wi));
      BatchSample sample;
      sample.config_index = ci;
      sample.walk_index = wi;
      sample.walk = run_walk(reps.weighted.graph, cfg, tax, rng);
      sample.env = envelope(reps.weighted.graph, sample.walk, cfg.radius);
      records[wi] = all_measures(sample, tax, reps.matrix_reduced);
      walks[wi] = std::move(sample.walk);
    });
    out.walks_per_config.push_back(std::move(walks));
    out.records.insert(out.records.end(), records.begin(), records.end());
  }
  return out;
}

AnalyzeResult run_analyze(const RunManifest& manifest,
                          const std::string& out_dir, std::ostream* log) {
  namespace fs = std::filesystem;

  auto reps = build_representations(manifest, log);
  if (reps.weighted.num_nodes() == 0)
    throw Error("dataset is empty; nothing to analyze");

  const auto grid = manifest.grid();
  auto batch =
      run_measured_batch(reps, grid, manifest.seed, manifest.threads);
  if (log) {
    std::uint64_t total = 0;
    for (auto n : batch.scheduled) total += n;
    *log << "batch: " << grid.size() << " configs, " << total
         << " samples, k=" << batch.path_constant << "\n";
  }

  auto profile = aggregate(grid, batch.records, manifest.dataset_label());
  profile.stats = reps.stats;
  for (const auto& walks : batch.walks_per_config) {
    auto dist = visit_distribution(walks);
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> rows;
    rows.reserve(dist.size());
    for (const auto& e : dist) {
      rows.emplace_back(e.rank, e.count,
                        reps.weighted.node_term(e.node).lexical);
    }
    profile.visit_distributions.push_back(std::move(rows));
  }

  AnalyzeResult result;
  result.profile = profile;
  auto files = emit_report({profile}, nullptr, 0.0, out_dir);
  result.files_written = files.paths;

  std::error_code ec;
  fs::create_directories(out_dir, ec);

  auto write_file = [&result, &out_dir](const std::string& name,
                                        const std::string& body) {
    const auto path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot write file");
    out << body;
    result.files_written.push_back(path);
  };

  write_file("manifest.json", manifest.to_json());

  Json batch_manifest;
  batch_manifest["schema_version"] = 1;
  batch_manifest["dataset"] = manifest.dataset_label();
  batch_manifest["master_seed"] = manifest.seed;
  batch_manifest["path_constant_k"] = batch.path_constant;
  batch_manifest["configs"] = Json::array();
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    batch_manifest["configs"].push_back(
        {{"config", grid[ci].key()}, {"samples", batch.scheduled[ci]}});
  }
  write_file("batch_manifest.json", batch_manifest.dump(2) + "\n");

  if (manifest.dump_samples) {
    std::string lines;
    for (const auto& rec : batch.records) {
      Json j;
      j["config"] = grid[rec.config_index].key();
      j["config_hash"] = grid[rec.config_index].hash();
      j["walk"] = rec.walk_index;
      for (std::size_t m = 0; m < kNumMeasures; ++m)
        j[measure_name(m)] = rec.values[m];
      lines += j.dump() + "\n";
    }
    write_file("samples.ndjson", lines);
  }

  if (log) {
    *log << "profile written for " << profile.label << " ("
         << result.files_written.size() << " files)\n";
  }
  return result;
}

}  // namespace cocoe
