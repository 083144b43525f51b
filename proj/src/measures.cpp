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

#include "cocoe/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "cocoe/errors.hpp"
#include "cocoe/rng.hpp"

namespace cocoe {

namespace {

const char* kMeasureNames[kNumMeasures] = {
    "envelope_nodes",        "envelope_components",  "mean_component_size",
    "walk_clustering",       "tax_start_end",        "tax_product",
    "tax_mean",              "cos_start_end",        "cos_product",
    "cos_mean",              "entropy_walk_top",     "entropy_walk_specific",
    "entropy_env_top",       "entropy_env_specific",
};

}  // namespace

std::string measure_letter(std::size_t id) {
  return std::string(1, static_cast<char>('A' + id));
}

std::string measure_name(std::size_t id) { return kMeasureNames[id]; }

double graph_density(std::uint64_t num_nodes, std::uint64_t num_edges) {
  if (num_nodes < 2) return 0.0;
  return 2.0 * static_cast<double>(num_edges) /
         (static_cast<double>(num_nodes) *
          (static_cast<double>(num_nodes) - 1.0));
}

double edge_node_ratio(std::uint64_t num_nodes, std::uint64_t num_edges) {
  if (num_nodes == 0) return 0.0;
  return static_cast<double>(num_edges) / static_cast<double>(num_nodes);
}

GlobalStats global_stats(const WeightedGraph& g, StatsMode mode,
                         std::size_t num_sources, std::uint64_t seed) {
  GlobalStats stats;
  stats.num_nodes = g.num_nodes();
  stats.num_edges = g.num_edges();
  stats.edge_node_ratio = edge_node_ratio(stats.num_nodes, stats.num_edges);
  stats.density = graph_density(stats.num_nodes, stats.num_edges);

  auto [comp, count] = connected_components(g);
  stats.num_components = count;
  if (count == 0) return stats;

  // Largest component, smallest id on ties.
  std::vector<std::uint64_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  const std::uint32_t largest = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeIndex> members;
  members.reserve(sizes[largest]);
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (comp[v] == largest) members.push_back(v);
  }
  if (members.size() < 2) return stats;  // diameter and mean path stay 0

  std::vector<NodeIndex> sources = members;
  if (mode == StatsMode::kEstimate && num_sources < members.size()) {
    Rng rng(seed);
    std::vector<NodeIndex> sampled;
    sampled.reserve(num_sources);
    std::vector<NodeIndex> pool = members;
    for (std::size_t i = 0; i < num_sources; ++i) {
      std::size_t pick = rng.next_below(pool.size() - i);
      std::swap(pool[pick], pool[pool.size() - 1 - i]);
      sampled.push_back(pool[pool.size() - 1 - i]);
    }
    std::sort(sampled.begin(), sampled.end());
    sources = std::move(sampled);
  }

  std::uint64_t max_dist = 0;
  long double dist_sum = 0.0L;
  std::uint64_t dist_count = 0;
  NodeIndex farthest = sources.empty() ? members.front() : sources.front();
  for (NodeIndex s : sources) {
    NodeIndex one[] = {s};
    auto depth = bfs_depths(g, one);
    for (NodeIndex v : members) {
      if (v == s) continue;
      const std::uint64_t d = depth[v];
      dist_sum += static_cast<long double>(d);
      ++dist_count;
      if (d > max_dist) {
        max_dist = d;
        farthest = v;
      }
    }
  }
  if (mode == StatsMode::kEstimate && sources.size() < members.size()) {
    // Double sweep: a BFS from the farthest node found tightens the lower
    // bound on the diameter.
    NodeIndex one[] = {farthest};
    auto depth = bfs_depths(g, one);
    for (NodeIndex v : members) {
      if (depth[v] != std::numeric_limits<std::uint32_t>::max())
        max_dist = std::max<std::uint64_t>(max_dist, depth[v]);
    }
  }
  stats.diameter = static_cast<double>(max_dist);
  stats.avg_shortest_path =
      dist_count == 0 ? 0.0 : static_cast<double>(dist_sum / dist_count);
  return stats;
}

BiconnectedComponents biconnected_components(const WeightedGraph& g) {
  // Iterative Hopcroft-Tarjan with an explicit edge stack. One component per
  // edge equivalence class; node counts come from the popped edge sets.
  const std::size_t n = g.num_nodes();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> disc(n, kUnset), low(n, kUnset), parent(n, kUnset);
  std::vector<std::pair<NodeIndex, NodeIndex>> edge_stack;
  BiconnectedComponents out;

  std::uint32_t timer = 0;
  struct Frame {
    NodeIndex v;
    std::size_t next_edge;
  };

  auto pop_component = [&](NodeIndex u, NodeIndex v) {
    std::set<NodeIndex> nodes;
    while (!edge_stack.empty()) {
      auto [a, b] = edge_stack.back();
      edge_stack.pop_back();
      nodes.insert(a);
      nodes.insert(b);
      if (a == u && b == v) break;
    }
    ++out.count;
    out.node_counts.push_back(nodes.size());
  };

  for (NodeIndex root = 0; root < n; ++root) {
    if (disc[root] != kUnset) continue;
    std::vector<Frame> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, next_edge] = stack.back();
      auto nbrs = g.neighbors(v);
      if (next_edge < nbrs.size()) {
        NodeIndex to = nbrs[next_edge].first;
        ++next_edge;
        if (to == v) continue;  // self-loop
        if (disc[to] == kUnset) {
          parent[to] = v;
          disc[to] = low[to] = timer++;
          edge_stack.emplace_back(v, to);
          stack.push_back({to, 0});
        } else if (to != parent[v] && disc[to] < disc[v]) {
          edge_stack.emplace_back(v, to);
          low[v] = std::min(low[v], disc[to]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          NodeIndex u = stack.back().v;
          low[u] = std::min(low[u], low[v]);
          if (low[v] >= disc[u]) pop_component(u, v);
        }
      }
    }
  }
  return out;
}

MeasureValues complexity_measures(const Envelope& env, const Walk& walk) {
  MeasureValues values{};
  values[kEnvelopeNodes] = static_cast<double>(env.nodes.size());

  auto bicc = biconnected_components(env.subgraph);
  values[kEnvelopeComponents] = static_cast<double>(bicc.count);
  if (bicc.count > 0) {
    double total = 0.0;
    for (std::size_t s : bicc.node_counts) total += static_cast<double>(s);
    values[kMeanComponentSize] = total / static_cast<double>(bicc.count);
  }

  std::vector<NodeIndex> walk_nodes = walk.nodes;
  std::sort(walk_nodes.begin(), walk_nodes.end());
  walk_nodes.erase(std::unique(walk_nodes.begin(), walk_nodes.end()),
                   walk_nodes.end());
  double coeff_sum = 0.0;
  for (NodeIndex v : walk_nodes) {
    auto it = std::lower_bound(env.nodes.begin(), env.nodes.end(), v);
    const auto local = static_cast<NodeIndex>(it - env.nodes.begin());
    coeff_sum += clustering_coefficient(env.subgraph, local);
  }
  values[kWalkClustering] =
      walk_nodes.empty() ? 0.0
                         : coeff_sum / static_cast<double>(walk_nodes.size());
  return values;
}

void coherence_measures(const Walk& walk, const Taxonomy& tax,
                        const DistMatrix& m, MeasureValues* values) {
  const auto& nodes = walk.nodes;
  const std::size_t steps = nodes.size() - 1;

  (*values)[kTaxStartEnd] = sim_tax(tax, nodes.front(), nodes.back());
  (*values)[kCosStartEnd] = cosine(m, nodes.front(), nodes.back());

  double tax_product = 1.0, tax_sum = 0.0;
  double cos_product = 1.0, cos_sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double st = sim_tax(tax, nodes[i], nodes[i + 1]);
    const double sc = cosine(m, nodes[i], nodes[i + 1]);
    tax_product *= st;
    cos_product *= sc;
    tax_sum += st;
    cos_sum += sc;
  }
  (*values)[kTaxProduct] = tax_product;
  (*values)[kCosProduct] = cos_product;
  (*values)[kTaxMean] = steps == 0 ? 1.0 : tax_sum / static_cast<double>(steps);
  (*values)[kCosMean] = steps == 0 ? 1.0 : cos_sum / static_cast<double>(steps);
}

double entropy(std::span<const NodeIndex> z, const Taxonomy& tax,
               ClusterScope scope) {
  // cs per cluster annotation over Z, then Shannon entropy of the
  // normalized sizes (0 log 0 := 0).
  std::map<TreeCode, std::uint64_t> counts;
  if (scope == ClusterScope::kTop) {
    for (NodeIndex v : z) {
      for (std::uint32_t top : tax.top_clusters(v))
        ++counts[TreeCode{{top}}];
    }
  } else {
    for (NodeIndex v : z) {
      for (const auto& code : tax.codes(v)) ++counts[code];
    }
  }
  std::uint64_t total = 0;
  for (const auto& [code, c] : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [code, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void entropy_measures(const Walk& walk, const Envelope& env,
                      const Taxonomy& tax, MeasureValues* values) {
  std::vector<NodeIndex> walk_nodes = walk.nodes;
  std::sort(walk_nodes.begin(), walk_nodes.end());
  walk_nodes.erase(std::unique(walk_nodes.begin(), walk_nodes.end()),
                   walk_nodes.end());
  (*values)[kEntropyWalkTop] = entropy(walk_nodes, tax, ClusterScope::kTop);
  (*values)[kEntropyWalkSpecific] =
      entropy(walk_nodes, tax, ClusterScope::kSpecific);
  // env.nodes already includes the walk nodes.
  (*values)[kEntropyEnvTop] = entropy(env.nodes, tax, ClusterScope::kTop);
  (*values)[kEntropyEnvSpecific] =
      entropy(env.nodes, tax, ClusterScope::kSpecific);
}

MeasureRecord all_measures(const BatchSample& sample, const Taxonomy& tax,
                           const DistMatrix& reduced) {
  MeasureRecord rec;
  rec.config_index = sample.config_index;
  rec.walk_index = sample.walk_index;
  rec.values = complexity_measures(sample.env, sample.walk);
  coherence_measures(sample.walk, tax, reduced, &rec.values);
  entropy_measures(sample.walk, sample.env, tax, &rec.values);
  return rec;
}

std::vector<VisitEntry> visit_distribution(const std::vector<Walk>& walks) {
  std::unordered_map<NodeIndex, std::uint64_t> counts;
  for (const auto& w : walks) {
    for (NodeIndex v : w.nodes) ++counts[v];
  }
  std::vector<VisitEntry> entries;
  entries.reserve(counts.size());
  for (const auto& [node, count] : counts)
    entries.push_back(VisitEntry{0, count, node});
  std::sort(entries.begin(), entries.end(),
            [](const VisitEntry& a, const VisitEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.node < b.node;
            });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = i + 1;
  return entries;
}

}  // namespace cocoe
