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
#include <string>
#include <vector>

#include "cocoe/graph.hpp"

namespace cocoe {

enum class TaxonomySource : std::uint8_t { kWeighted = 0, kSimilarity = 1 };

// A cluster of some level. Running ids start at 1 and keep counting across
// levels ("C1", "C2", ... in rendered form). members always holds base
// nodes; child_clusters (levels > 0) holds positions into the level below.
struct Cluster {
  std::uint32_t id = 0;
  std::vector<NodeIndex> members;          // sorted base node indices
  std::vector<std::uint32_t> child_clusters;
};

// Root-to-leaf path of cluster running ids.
struct TreeCode {
  std::vector<std::uint32_t> ids;

  std::size_t depth() const { return ids.size(); }
  friend auto operator<=>(const TreeCode&, const TreeCode&) = default;
};

std::string render_code(const TreeCode& code);

struct Taxonomy {
  TaxonomySource source = TaxonomySource::kWeighted;
  std::vector<std::vector<Cluster>> levels;    // levels[0] = leaves
  std::vector<std::vector<TreeCode>> node_codes;  // per base node, sorted

  std::size_t num_levels() const { return levels.size(); }
  std::size_t num_base_nodes() const { return node_codes.size(); }
  const std::vector<TreeCode>& codes(NodeIndex v) const;
  // Top-level cluster ids of a node (first id of each code, deduplicated).
  std::vector<std::uint32_t> top_clusters(NodeIndex v) const;
};

enum class ClusterScope : std::uint8_t { kTop = 0, kSpecific = 1 };

// Threshold for the path-product membership test. The worked-example policy
// admits edges at the minimum weight, so the comparison mode is carried
// along with the value.
struct Threshold {
  double value = 0.0;
  bool inclusive = false;

  bool passes(double product) const {
    return inclusive ? product >= value : product > value;
  }
};

struct EpsilonPolicy {
  enum class Kind { kPercentile, kMinWeight, kFixed };
  Kind kind = Kind::kPercentile;
  double parameter = 75.0;  // percentile in [0,100], or the fixed epsilon

  static EpsilonPolicy percentile(double p) {
    return {Kind::kPercentile, p};
  }
  static EpsilonPolicy min_weight() { return {Kind::kMinWeight, 0.0}; }
  static EpsilonPolicy fixed(double eps) { return {Kind::kFixed, eps}; }

  Threshold threshold_for(const WeightedGraph& g) const;
};

// Nearest-rank percentile of a non-empty sample.
double percentile(std::vector<double> values, double p);

// Fraction of neighbor pairs of v that are themselves adjacent; 0 when v has
// fewer than two neighbors. Self-loops are ignored.
double clustering_coefficient(const WeightedGraph& g, NodeIndex v);

// Best path-weight product from seed to every node, where edge weights are
// capped at 1 so products never increase along a path (that cap is what
// makes the best-first expansion exact). Unreachable nodes get 0; the seed
// gets 1.
std::vector<double> max_product_reach(const WeightedGraph& g, NodeIndex seed);

// Leaf-level clustering: repeatedly seed from the highest-ranked node still
// unclustered and collect everything whose best path product passes the
// threshold. Clusters may overlap; ids are assigned from first_id upward.
std::vector<Cluster> leaf_clusters_with(const WeightedGraph& g,
                                        Threshold threshold,
                                        std::uint32_t first_id = 1);

std::vector<Cluster> leaf_clusters(const WeightedGraph& g, double epsilon);

// Graph over the clusters of one level: an edge wherever two clusters share
// base nodes, weighted by the mean of base-graph edge weights over the
// intersection (fully covered edges count twice, partially covered once,
// divided by three).
WeightedGraph cluster_graph(const std::vector<Cluster>& prev,
                            const WeightedGraph& base);

// Full hierarchy: leaf_clusters on g, then on successive cluster graphs.
// Stops at a single cluster, when the cluster count stops shrinking, or at
// max_levels. Node codes unroll membership root to leaf.
Taxonomy build_taxonomy(const WeightedGraph& g, const EpsilonPolicy& policy,
                        TaxonomySource source, std::size_t max_levels = 16);

// Number of distinct clusters of the given scope covering Z.
std::size_t cn(const Taxonomy& tax, std::span<const NodeIndex> z,
               ClusterScope scope);

// Number of nodes in Z annotated with the cluster: for kTop the cluster is
// identified by its running id (code ignored past the root), for kSpecific
// by the whole code.
std::size_t cs(const Taxonomy& tax, std::span<const NodeIndex> z,
               const TreeCode& cluster, ClusterScope scope);

// Wu-Palmer-style similarity maximized over the two nodes' code sets:
// 2*depth(lcs) / (depth(u)+depth(v)) with lcs the longest common prefix.
double sim_tax(const Taxonomy& tax, NodeIndex x, NodeIndex y);

// Text export: one line per node, "node<TAB>code1,code2,...".
void write_taxonomy(const Taxonomy& tax, const TermGraph& labels,
                    std::ostream& out);

}  // namespace cocoe
