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

#include "cocoe/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "cocoe/errors.hpp"

namespace cocoe {

namespace {

std::optional<NodeIndex> lookup_node(const TermTable& terms,
                                     const std::vector<TermId>& nodes,
                                     const Term& t) {
  auto id = terms.find(t);
  if (id < 0) return std::nullopt;
  auto it = std::lower_bound(nodes.begin(), nodes.end(),
                             static_cast<TermId>(id));
  if (it == nodes.end() || *it != static_cast<TermId>(id)) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes.begin());
}

}  // namespace

std::optional<NodeIndex> DirectGraph::node_of(const Term& t) const {
  return lookup_node(*terms, nodes, t);
}

std::optional<NodeIndex> TermGraph::node_of(const Term& t) const {
  return lookup_node(*terms, nodes, t);
}

WeightedGraph WeightedGraph::from_edges(
    std::size_t n,
    std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges) {
  WeightedGraph g(n);
  for (const auto& [u, v, w] : edges) {
    g.adj_[u].emplace_back(v, w);
    if (u != v) g.adj_[v].emplace_back(u, w);
  }
  for (auto& list : g.adj_) std::sort(list.begin(), list.end());
  g.num_edges_ = edges.size();
  return g;
}

bool WeightedGraph::has_edge(NodeIndex u, NodeIndex v) const {
  return edge_weight(u, v).has_value();
}

std::optional<double> WeightedGraph::edge_weight(NodeIndex u,
                                                 NodeIndex v) const {
  const auto& list = adj_[u];
  auto it = std::lower_bound(
      list.begin(), list.end(), v,
      [](const std::pair<NodeIndex, double>& e, NodeIndex x) {
        return e.first < x;
      });
  if (it == list.end() || it->first != v) return std::nullopt;
  return it->second;
}

std::vector<std::tuple<NodeIndex, NodeIndex, double>>
WeightedGraph::edge_list() const {
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> out;
  out.reserve(num_edges_);
  for (NodeIndex u = 0; u < adj_.size(); ++u) {
    for (const auto& [v, w] : adj_[u]) {
      if (v >= u) out.emplace_back(u, v, w);
    }
  }
  return out;
}

std::vector<double> WeightedGraph::weight_list() const {
  std::vector<double> out;
  out.reserve(num_edges_);
  for (NodeIndex u = 0; u < adj_.size(); ++u) {
    for (const auto& [v, w] : adj_[u]) {
      if (v >= u) out.push_back(w);
    }
  }
  return out;
}

std::vector<std::uint32_t> bfs_depths(const WeightedGraph& g,
                                      std::span<const NodeIndex> sources,
                                      std::optional<std::uint32_t> max_depth) {
  constexpr auto kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> depth(g.num_nodes(), kUnreached);
  std::deque<NodeIndex> queue;
  for (NodeIndex s : sources) {
    if (depth[s] != 0) {
      depth[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    NodeIndex u = queue.front();
    queue.pop_front();
    if (max_depth && depth[u] >= *max_depth) continue;
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (depth[v] == kUnreached) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return depth;
}

std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(
    const WeightedGraph& g) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.num_nodes(), kNone);
  std::uint32_t next = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != kNone) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeIndex u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (comp[v] == kNone) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return {std::move(comp), next};
}

}  // namespace cocoe
