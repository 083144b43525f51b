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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cocoe/graph.hpp"
#include "cocoe/representations.hpp"
#include "cocoe/taxonomy.hpp"
#include "cocoe/walker.hpp"

namespace cocoe {

// Per-walk measures. A-D are structural complexity of the envelope, E-J walk
// coherences (taxonomy- and cosine-based), K-N entropies of the cluster
// annotations.
enum MeasureId : std::size_t {
  kEnvelopeNodes = 0,          // A
  kEnvelopeComponents = 1,     // B
  kMeanComponentSize = 2,      // C
  kWalkClustering = 3,         // D
  kTaxStartEnd = 4,            // E
  kTaxProduct = 5,             // F
  kTaxMean = 6,                // G
  kCosStartEnd = 7,            // H
  kCosProduct = 8,             // I
  kCosMean = 9,                // J
  kEntropyWalkTop = 10,        // K
  kEntropyWalkSpecific = 11,   // L
  kEntropyEnvTop = 12,         // M
  kEntropyEnvSpecific = 13,    // N
};

constexpr std::size_t kNumMeasures = 14;

// Short letter (A..N) and descriptive name of a measure.
std::string measure_letter(std::size_t id);
std::string measure_name(std::size_t id);

using MeasureValues = std::array<double, kNumMeasures>;

struct MeasureRecord {
  std::size_t config_index = 0;
  std::uint64_t walk_index = 0;
  MeasureValues values{};
};

struct GlobalStats {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  double edge_node_ratio = 0.0;
  double density = 0.0;
  double diameter = 0.0;        // largest connected component
  double avg_shortest_path = 0.0;
  std::uint32_t num_components = 0;
};

double graph_density(std::uint64_t num_nodes, std::uint64_t num_edges);
double edge_node_ratio(std::uint64_t num_nodes, std::uint64_t num_edges);

enum class StatsMode : std::uint8_t { kExact = 0, kEstimate = 1 };

// Counts are exact; diameter and average shortest path are computed on the
// largest component, by all-sources BFS in exact mode and from sampled
// sources plus a double-sweep diameter bound in estimate mode. With
// num_sources >= |LCC| the estimate coincides with the exact values.
GlobalStats global_stats(const WeightedGraph& g, StatsMode mode,
                         std::size_t num_sources = 100,
                         std::uint64_t seed = 0x5eed);

// Biconnected components (Hopcroft-Tarjan): number of edge classes and their
// node counts. Self-loops are ignored; isolated nodes form no component.
struct BiconnectedComponents {
  std::size_t count = 0;
  std::vector<std::size_t> node_counts;
};
BiconnectedComponents biconnected_components(const WeightedGraph& g);

MeasureValues complexity_measures(const Envelope& env, const Walk& walk);

void coherence_measures(const Walk& walk, const Taxonomy& tax,
                        const DistMatrix& m, MeasureValues* values);

// Shannon entropy of the cluster-size distribution over Z's annotations.
double entropy(std::span<const NodeIndex> z, const Taxonomy& tax,
               ClusterScope scope);

void entropy_measures(const Walk& walk, const Envelope& env,
                      const Taxonomy& tax, MeasureValues* values);

MeasureRecord all_measures(const BatchSample& sample, const Taxonomy& tax,
                           const DistMatrix& reduced);

// Per-node visit counts over a set of walks, most visited first.
struct VisitEntry {
  std::uint64_t rank = 0;  // 1-based
  std::uint64_t count = 0;
  NodeIndex node = 0;
};
std::vector<VisitEntry> visit_distribution(const std::vector<Walk>& walks);

}  // namespace cocoe
