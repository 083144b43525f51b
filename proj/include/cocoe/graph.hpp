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
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cocoe/term.hpp"

namespace cocoe {

using NodeIndex = std::uint32_t;

// Labeled directed multigraph over the dataset. Node indices are dense ranks
// over the sorted subject/object term set, shared with every structure built
// from the same TripleSet.
struct DirectEdge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  TermId predicate = 0;

  friend auto operator<=>(const DirectEdge&, const DirectEdge&) = default;
};

struct DirectGraph {
  std::shared_ptr<const TermTable> terms;
  std::vector<TermId> nodes;       // sorted; index in this vector = NodeIndex
  std::vector<DirectEdge> edges;   // sorted, one per distinct triple

  std::size_t num_nodes() const { return nodes.size(); }
  const Term& node_term(NodeIndex i) const { return terms->term(nodes[i]); }
  std::optional<NodeIndex> node_of(const Term& t) const;
};

// Undirected weighted graph over dense node indices. Adjacency lists are
// sorted; both directions of an edge are stored, a self-loop only once.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : adj_(n) {}

  // Edges may be listed in any order but at most once per unordered pair.
  static WeightedGraph from_edges(
      std::size_t n,
      std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges);

  std::size_t num_nodes() const { return adj_.size(); }
  std::uint64_t num_edges() const { return num_edges_; }

  std::span<const std::pair<NodeIndex, double>> neighbors(NodeIndex v) const {
    return adj_[v];
  }
  std::size_t degree(NodeIndex v) const { return adj_[v].size(); }
  bool has_edge(NodeIndex u, NodeIndex v) const;
  // Weight of {u,v} in either order; nullopt when absent.
  std::optional<double> edge_weight(NodeIndex u, NodeIndex v) const;

  // Every distinct edge once, as (u, v, w) with u <= v, sorted.
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edge_list() const;

  std::vector<double> weight_list() const;

  bool is_isolated(NodeIndex v) const { return adj_[v].empty(); }

 private:
  std::vector<std::vector<std::pair<NodeIndex, double>>> adj_;
  std::uint64_t num_edges_ = 0;
};

// Weighted graph over the dataset's node universe, carrying its labels.
struct TermGraph {
  std::shared_ptr<const TermTable> terms;
  std::vector<TermId> nodes;  // same indexing as DirectGraph/DistMatrix rows
  WeightedGraph graph;

  std::size_t num_nodes() const { return graph.num_nodes(); }
  const Term& node_term(NodeIndex i) const { return terms->term(nodes[i]); }
  std::optional<NodeIndex> node_of(const Term& t) const;
};

// Hop distances from sources, capped at max_depth (unlimited if nullopt).
// Unreached nodes get UINT32_MAX.
std::vector<std::uint32_t> bfs_depths(
    const WeightedGraph& g, std::span<const NodeIndex> sources,
    std::optional<std::uint32_t> max_depth = std::nullopt);

// Connected components: per-node component id (0-based) and component count.
std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(
    const WeightedGraph& g);

}  // namespace cocoe
