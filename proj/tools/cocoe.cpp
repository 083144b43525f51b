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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cocoe/errors.hpp"
#include "cocoe/ntriples.hpp"
#include "cocoe/pipeline.hpp"
#include "cocoe/profiler.hpp"

namespace {

using cocoe::Heuristic;
using Json = nlohmann::ordered_json;

std::vector<Heuristic> parse_heuristics(const std::vector<std::string>& names) {
  std::vector<Heuristic> out;
  for (const auto& n : names) {
    if (n == "H1" || n == "h1") out.push_back(Heuristic::kH1);
    else if (n == "H2" || n == "h2") out.push_back(Heuristic::kH2);
    else if (n == "H3" || n == "h3") out.push_back(Heuristic::kH3);
    else if (n == "H4" || n == "h4") out.push_back(Heuristic::kH4);
    else throw CLI::ValidationError("--heuristics", "unknown heuristic " + n);
  }
  return out;
}

int cmd_analyze(const cocoe::RunManifest& manifest, const std::string& out_dir) {
  for (const auto& path : manifest.inputs) {
    if (!std::filesystem::exists(path)) {
      std::cerr << "error: input file does not exist: " << path << "\n";
      return 1;
    }
  }
  try {
    auto result = cocoe::run_analyze(manifest, out_dir, &std::cerr);
    std::cout << "profile: " << out_dir << "/profile.json ("
              << result.profile.summaries.size() << " configs)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_compare(const std::vector<std::string>& profile_paths, double margin,
                const std::string& out_dir) {
  if (profile_paths.size() < 3) {
    std::cerr << "error: compare needs at least 3 profiles, got "
              << profile_paths.size() << "\n";
    return 2;
  }
  try {
    std::vector<cocoe::DatasetProfile> profiles;
    for (const auto& path : profile_paths) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw cocoe::IoError(path, "cannot open profile");
      std::stringstream buf;
      buf << in.rdbuf();
      profiles.push_back(cocoe::profile_from_json(buf.str()));
    }
    auto classes = cocoe::classify(profiles, margin);

    // printf field widths count bytes, and the arrows are multi-byte.
    auto cell = [](const std::string& symbol) {
      return symbol + std::string(11, ' ');
    };
    std::printf("%-24s %-12s %-12s %-12s\n", "dataset", "complexity",
                "coherence", "entropy");
    for (const auto& [label, c] : classes) {
      std::printf("%-24s %s %s %s\n", label.c_str(),
                  cell(cocoe::trend_symbol(c.complexity)).c_str(),
                  cell(cocoe::trend_symbol(c.coherence)).c_str(),
                  cell(cocoe::trend_symbol(c.entropy)).c_str());
    }

    std::filesystem::create_directories(out_dir);
    const auto path =
        (std::filesystem::path(out_dir) / "classification.json").string();
    std::ofstream out(path, std::ios::binary);
    out << cocoe::classification_to_json(classes, margin);
    std::cout << "classification: " << path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_stats(const std::vector<std::string>& inputs, bool strict) {
  try {
    cocoe::RunManifest manifest;
    manifest.inputs = inputs;
    manifest.strict = strict;
    for (const auto& path : inputs) {
      if (!std::filesystem::exists(path)) {
        std::cerr << "error: input file does not exist: " << path << "\n";
        return 1;
      }
    }

    std::vector<cocoe::TripleSet> parts;
    for (const auto& path : inputs) {
      cocoe::ParseOptions opts;
      opts.strict = strict;
      parts.push_back(
          cocoe::parse_ntriples_file(path, path, opts).triples);
    }
    auto triples = parts.size() == 1
                       ? std::move(parts.front())
                       : cocoe::merge_datasets(parts, "all");
    if (triples.empty()) {
      std::printf("|V| |E| |E|/|V| D d l_G |C|\n");
      std::printf("0 0 0 0 0 0 0\n");
      return 0;
    }
    auto direct = cocoe::build_direct_graph(triples);
    auto matrix = cocoe::build_dist_matrix(direct);
    auto gw = cocoe::build_weighted_graph(direct, matrix);
    const auto mode = gw.num_nodes() <= 5000 ? cocoe::StatsMode::kExact
                                             : cocoe::StatsMode::kEstimate;
    auto stats = cocoe::global_stats(gw.graph, mode);
    std::printf("|V| |E| |E|/|V| D d l_G |C|\n");
    std::printf("%llu %llu %.3f %.6g %g %.3f %u\n",
                static_cast<unsigned long long>(stats.num_nodes),
                static_cast<unsigned long long>(stats.num_edges),
                stats.edge_node_ratio, stats.density, stats.diameter,
                stats.avg_shortest_path, stats.num_components);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_cluster_dump(const cocoe::RunManifest& manifest,
                     const std::string& source, const std::string& out_dir) {
  try {
    auto reps = cocoe::build_representations(manifest, &std::cerr);
    const bool weighted = source == "w";
    const auto& tax = weighted ? reps.tax_w : reps.tax_s;
    const auto& labels = weighted ? reps.weighted : reps.similarity;

    std::filesystem::create_directories(out_dir);
    const auto text_path =
        (std::filesystem::path(out_dir) / ("taxonomy_T" + source + ".tsv"))
            .string();
    std::ofstream text(text_path, std::ios::binary);
    cocoe::write_taxonomy(tax, labels, text);

    // Dendrogram: clusters per level with members at the leaves.
    Json dendro;
    dendro["schema_version"] = 1;
    dendro["source"] = weighted ? "Tw" : "Ts";
    dendro["levels"] = Json::array();
    for (std::size_t k = 0; k < tax.levels.size(); ++k) {
      Json level = Json::array();
      for (const auto& c : tax.levels[k]) {
        Json jc;
        jc["id"] = "C" + std::to_string(c.id);
        if (k == 0) {
          Json members = Json::array();
          for (auto v : c.members)
            members.push_back(labels.node_term(v).lexical);
          jc["members"] = std::move(members);
        } else {
          Json children = Json::array();
          for (auto child : c.child_clusters)
            children.push_back("C" +
                               std::to_string(tax.levels[k - 1][child].id));
          jc["children"] = std::move(children);
        }
        level.push_back(std::move(jc));
      }
      dendro["levels"].push_back(std::move(level));
    }
    const auto json_path =
        (std::filesystem::path(out_dir) / ("taxonomy_T" + source + ".json"))
            .string();
    std::ofstream json_out(json_path, std::ios::binary);
    json_out << dendro.dump(2) << "\n";
    std::cout << text_path << "\n" << json_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_walk_dump(const cocoe::RunManifest& manifest, std::uint64_t count) {
  try {
    auto reps = cocoe::build_representations(manifest, &std::cerr);
    auto grid = manifest.grid();
    for (const auto& cfg : grid) {
      for (std::uint64_t wi = 0; wi < count; ++wi) {
        cocoe::Rng rng(cocoe::walk_seed(manifest.seed, cfg, wi));
        const auto& tax = cfg.taxonomy_source == cocoe::TaxonomySource::kWeighted
                              ? reps.tax_w
                              : reps.tax_s;
        auto walk = cocoe::run_walk(reps.weighted.graph, cfg, tax, rng);
        auto env = cocoe::envelope(reps.weighted.graph, walk, cfg.radius);
        Json j;
        j["config"] = cfg.key();
        j["walk_index"] = wi;
        j["nodes"] = Json::array();
        for (auto v : walk.nodes)
          j["nodes"].push_back(reps.weighted.node_term(v).lexical);
        j["envelope_size"] = env.nodes.size();
        std::cout << j.dump() << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical profiling of RDF datasets: complexity, coherence "
               "and entropy measures over quasi-random graph walks"};
  app.require_subcommand(1);

  cocoe::RunManifest manifest;
  std::string out_dir = "out";
  std::string manifest_path;
  double margin = 0.05;
  std::vector<std::string> heuristic_names = {"H1", "H2", "H3", "H4"};

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline");
  analyze->add_option("--input", manifest.inputs, "Input .nt/.nt.gz files");
  analyze->add_option("--manifest", manifest_path,
                      "Replay a manifest.json (overrides other flags)");
  analyze->add_option("--label", manifest.label, "Dataset label");
  analyze->add_option("--lengths", manifest.lengths, "Walk lengths")
      ->delimiter(',');
  analyze->add_option("--radii", manifest.radii, "Envelope radii")
      ->delimiter(',');
  analyze->add_option("--heuristics", heuristic_names, "Heuristics H1..H4")
      ->delimiter(',');
  analyze->add_option("--dims", manifest.dims,
                      "Dimensionality reduction size (default 250)");
  analyze->add_option("--sim-eps", manifest.sim_epsilon,
                      "Similarity graph threshold (default 0.5)");
  analyze->add_option("--cluster-eps-percentile",
                      manifest.cluster_eps_percentile,
                      "Clustering threshold percentile (default 75)");
  analyze->add_option("--seed", manifest.seed, "Master seed");
  analyze->add_option("--out", out_dir, "Output directory");
  analyze->add_flag("--strict", manifest.strict, "Abort on malformed lines");
  analyze->add_option("--threads", manifest.threads, "Worker thread cap");
  analyze->add_flag("--dump-samples", manifest.dump_samples,
                    "Write per-sample measure records");

  std::vector<std::string> profile_paths;
  auto* compare =
      app.add_subcommand("compare", "Classify >=3 dataset profiles");
  compare->add_option("profiles", profile_paths, "profile.json files");
  compare->add_option("--margin", margin,
                      "Relative dominance margin (default 0.05)");
  compare->add_option("--out", out_dir, "Output directory");

  std::vector<std::string> stats_inputs;
  bool stats_strict = false;
  auto* stats = app.add_subcommand("stats", "Print global graph statistics");
  stats->add_option("inputs", stats_inputs, "Input .nt/.nt.gz files");
  stats->add_flag("--strict", stats_strict, "Abort on malformed lines");

  std::string cluster_source = "w";
  auto* cluster_dump =
      app.add_subcommand("cluster-dump", "Export a computed taxonomy");
  cluster_dump->add_option("--input", manifest.inputs, "Input files");
  cluster_dump->add_option("--source", cluster_source,
                           "Graph to cluster: w or s");
  cluster_dump->add_option("--dims", manifest.dims, "Reduction size");
  cluster_dump->add_option("--sim-eps", manifest.sim_epsilon,
                           "Similarity threshold");
  cluster_dump->add_option("--cluster-eps-percentile",
                           manifest.cluster_eps_percentile,
                           "Clustering threshold percentile");
  cluster_dump->add_option("--out", out_dir, "Output directory");
  cluster_dump->add_flag("--strict", manifest.strict, "Strict parsing");

  std::uint64_t walk_count = 3;
  auto* walk_dump =
      app.add_subcommand("walk-dump", "Print sample walks as JSON lines");
  walk_dump->add_option("--input", manifest.inputs, "Input files");
  walk_dump->add_option("--count", walk_count, "Walks per config");
  walk_dump->add_option("--lengths", manifest.lengths, "Walk lengths")
      ->delimiter(',');
  walk_dump->add_option("--radii", manifest.radii, "Envelope radii")
      ->delimiter(',');
  walk_dump->add_option("--heuristics", heuristic_names, "Heuristics")
      ->delimiter(',');
  walk_dump->add_option("--seed", manifest.seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    manifest.heuristics = parse_heuristics(heuristic_names);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (analyze->parsed()) {
    if (!manifest_path.empty()) {
      const int cli_threads = manifest.threads;
      try {
        manifest = cocoe::RunManifest::from_json_file(manifest_path);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      // Worker count is not part of a manifest; the flag still applies.
      if (analyze->count("--threads") > 0) manifest.threads = cli_threads;
    }
    if (manifest.inputs.empty()) {
      std::cerr << "error: analyze requires --input or --manifest\n";
      return 2;
    }
    return cmd_analyze(manifest, out_dir);
  }
  if (compare->parsed()) return cmd_compare(profile_paths, margin, out_dir);
  if (stats->parsed()) {
    if (stats_inputs.empty()) {
      std::cerr << "error: stats requires at least one input\n";
      return 2;
    }
    return cmd_stats(stats_inputs, stats_strict);
  }
  if (cluster_dump->parsed()) {
    if (manifest.inputs.empty()) {
      std::cerr << "error: cluster-dump requires --input\n";
      return 2;
    }
    if (cluster_source != "w" && cluster_source != "s") {
      std::cerr << "error: --source must be w or s\n";
      return 2;
    }
    return cmd_cluster_dump(manifest, cluster_source, out_dir);
  }
  if (walk_dump->parsed()) {
    if (manifest.inputs.empty()) {
      std::cerr << "error: walk-dump requires --input\n";
      return 2;
    }
    return cmd_walk_dump(manifest, walk_count);
  }
  return 2;
}
