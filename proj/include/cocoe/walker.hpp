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
#include <functional>
#include <string>
#include <vector>

#include "cocoe/graph.hpp"
#include "cocoe/rng.hpp"
#include "cocoe/taxonomy.hpp"

namespace cocoe {

// Neighbor ranking criteria: H1 prefers unvisited nodes, H2 heavier edges,
// H3 taxonomically similar nodes, H4 dissimilar ones.
enum class Heuristic : std::uint8_t { kH1 = 1, kH2 = 2, kH3 = 3, kH4 = 4 };

std::string to_string(Heuristic h);
std::string to_string(TaxonomySource s);

struct WalkConfig {
  std::uint32_t length = 2;        // steps; the walk has length+1 nodes
  std::uint32_t radius = 0;        // envelope radius
  Heuristic heuristic = Heuristic::kH1;
  TaxonomySource taxonomy_source = TaxonomySource::kWeighted;
  std::uint64_t seed = 0;

  // Canonical key, also used for sub-seed derivation.
  std::string key() const;
  std::uint64_t hash() const;

  friend bool operator==(const WalkConfig& a, const WalkConfig& b) {
    return a.length == b.length && a.radius == b.radius &&
           a.heuristic == b.heuristic &&
           a.taxonomy_source == b.taxonomy_source;
  }
};

struct Walk {
  std::vector<NodeIndex> nodes;  // length+1 entries, consecutive adjacency
};

struct Envelope {
  std::vector<NodeIndex> nodes;  // sorted, original graph indices
  WeightedGraph subgraph;        // induced, over positions in `nodes`
};

// All neighbors of current, ordered by the heuristic's preference; unvisited
// nodes always rank before visited ones, ties fall to the walk's random
// stream.
std::vector<NodeIndex> rank_neighbors(const WeightedGraph& g,
                                      NodeIndex current,
                                      const std::vector<bool>& visited,
                                      const WalkConfig& cfg,
                                      const Taxonomy& tax, Rng& rng);

// Scan the ranked list accepting position i (1-based) with probability
// 1/(i+1); fall back to a uniform pick if the scan exhausts the list.
NodeIndex select_next(const std::vector<NodeIndex>& ranked, Rng& rng);

// A quasi-random walk from a uniformly drawn non-isolated start node.
Walk run_walk(const WeightedGraph& g, const WalkConfig& cfg,
              const Taxonomy& tax, Rng& rng);

// Union of r-hop balls around the walk nodes with the induced subgraph.
Envelope envelope(const WeightedGraph& g, const Walk& w, std::uint32_t r);

// floor(num_nodes / (k * (l + 1))), at least 1.
std::uint64_t sample_count(std::uint64_t num_nodes, std::uint32_t l,
                           std::uint64_t k);

// The experiment grid in canonical order: heuristic, then length, radius,
// taxonomy source.
std::vector<WalkConfig> make_grid(const std::vector<std::uint32_t>& lengths,
                                  const std::vector<std::uint32_t>& radii,
                                  const std::vector<Heuristic>& heuristics,
                                  const std::vector<TaxonomySource>& sources);

std::uint64_t walk_seed(std::uint64_t master_seed, const WalkConfig& cfg,
                        std::uint64_t walk_index);

// fn(0..n-1) on up to `threads` workers; the first worker exception is
// rethrown on the calling thread.
void run_indexed(std::uint64_t n, int threads,
                 const std::function<void(std::uint64_t)>& fn);

struct BatchSample {
  std::size_t config_index = 0;
  std::uint64_t walk_index = 0;
  Walk walk;
  Envelope env;
};

// Runs sample_count(|V|, l, k) walks per config with independently derived
// sub-seeds. The sink is invoked in (config, walk index) order regardless of
// the worker count, so parallel and serial runs emit identical streams.
void run_batch(const WeightedGraph& g, const Taxonomy& tax_w,
               const Taxonomy& tax_s, const std::vector<WalkConfig>& grid,
               std::uint64_t master_seed, std::uint64_t k, int threads,
               const std::function<void(const BatchSample&)>& sink);

}  // namespace cocoe
