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

#include "cocoe/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>
#include <set>
#include <unordered_map>

#include "cocoe/errors.hpp"

namespace cocoe {

std::string render_code(const TreeCode& code) {
  std::string out;
  for (std::size_t i = 0; i < code.ids.size(); ++i) {
    if (i) out += '.';
    out += 'C';
    out += std::to_string(code.ids[i]);
  }
  return out;
}

const std::vector<TreeCode>& Taxonomy::codes(NodeIndex v) const {
  if (v >= node_codes.size()) throw UnknownNode(std::to_string(v));
  return node_codes[v];
}

std::vector<std::uint32_t> Taxonomy::top_clusters(NodeIndex v) const {
  std::vector<std::uint32_t> tops;
  for (const auto& code : codes(v)) tops.push_back(code.ids.front());
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  return tops;
}

double percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  auto idx = static_cast<std::size_t>(std::max(1.0, rank)) - 1;
  idx = std::min(idx, values.size() - 1);
  return values[idx];
}

Threshold EpsilonPolicy::threshold_for(const WeightedGraph& g) const {
  switch (kind) {
    case Kind::kFixed:
      return {parameter, false};
    case Kind::kMinWeight: {
      auto weights = g.weight_list();
      if (weights.empty())
        return {std::numeric_limits<double>::infinity(), false};
      return {*std::min_element(weights.begin(), weights.end()), true};
    }
    case Kind::kPercentile:
    default: {
      auto weights = g.weight_list();
      if (weights.empty())
        return {std::numeric_limits<double>::infinity(), false};
      return {cocoe::percentile(std::move(weights), parameter), false};
    }
  }
}

double clustering_coefficient(const WeightedGraph& g, NodeIndex v) {
  if (v >= g.num_nodes()) throw UnknownNode(std::to_string(v));
  auto nbrs = g.neighbors(v);
  std::vector<NodeIndex> a;
  a.reserve(nbrs.size());
  for (const auto& [u, w] : nbrs) {
    (void)w;
    if (u != v) a.push_back(u);
  }
  if (a.size() < 2) return 0.0;

  // Triangles at v: adjacent pairs within the neighbor set. Each triangle is
  // seen from both of its non-v corners.
  std::uint64_t twice_triangles = 0;
  for (NodeIndex u : a) {
    auto un = g.neighbors(u);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < un.size()) {
      if (a[i] == un[j].first) {
        if (a[i] != u) ++twice_triangles;
        ++i;
        ++j;
      } else if (a[i] < un[j].first) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  const double lambda = static_cast<double>(twice_triangles) / 2.0;
  const double d = static_cast<double>(a.size());
  return 2.0 * lambda / (d * (d - 1.0));
}

namespace {

// Sparse best-first expansion. Products are capped so they never increase
// along a path, which keeps the expansion label-setting; nodes whose product
// fails the threshold are not expanded further (extensions can only fail
// too).
std::vector<std::pair<NodeIndex, double>> expand_members(
    const WeightedGraph& g, NodeIndex seed, Threshold threshold) {
  std::unordered_map<NodeIndex, double> best;
  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry> heap;
  best[seed] = 1.0;
  heap.push({1.0, seed});
  while (!heap.empty()) {
    auto [product, u] = heap.top();
    heap.pop();
    if (product < best[u]) continue;
    for (const auto& [v, w] : g.neighbors(u)) {
      const double cand = product * std::min(w, 1.0);
      if (!threshold.passes(cand)) continue;
      auto it = best.find(v);
      if (it == best.end() || cand > it->second) {
        best[v] = cand;
        heap.push({cand, v});
      }
    }
  }
  std::vector<std::pair<NodeIndex, double>> out(best.begin(), best.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> max_product_reach(const WeightedGraph& g, NodeIndex seed) {
  if (seed >= g.num_nodes()) throw UnknownNode(std::to_string(seed));
  std::vector<double> products(g.num_nodes(), 0.0);
  for (const auto& [v, p] :
       expand_members(g, seed, Threshold{0.0, /*inclusive=*/false}))
    products[v] = p;
  products[seed] = 1.0;
  return products;
}

std::vector<Cluster> leaf_clusters_with(const WeightedGraph& g,
                                        Threshold threshold,
                                        std::uint32_t first_id) {
  std::vector<NodeIndex> order(g.num_nodes());
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) order[v] = v;
  std::vector<double> coeff(g.num_nodes());
  for (NodeIndex v = 0; v < g.num_nodes(); ++v)
    coeff[v] = clustering_coefficient(g, v);
  std::stable_sort(order.begin(), order.end(),
                   [&coeff](NodeIndex a, NodeIndex b) {
                     if (coeff[a] != coeff[b]) return coeff[a] > coeff[b];
                     return a < b;
                   });

  std::vector<Cluster> clusters;
  std::vector<bool> unclustered(g.num_nodes(), true);
  std::uint32_t next_id = first_id;
  for (NodeIndex seed : order) {
    if (!unclustered[seed]) continue;
    Cluster c;
    c.id = next_id++;
    for (const auto& [v, p] : expand_members(g, seed, threshold)) {
      (void)p;
      c.members.push_back(v);
    }
    // The seed belongs to its cluster even when nothing passes the test.
    if (!std::binary_search(c.members.begin(), c.members.end(), seed)) {
      c.members.push_back(seed);
      std::sort(c.members.begin(), c.members.end());
    }
    for (NodeIndex v : c.members) unclustered[v] = false;
    clusters.push_back(std::move(c));
  }
  return clusters;
}

std::vector<Cluster> leaf_clusters(const WeightedGraph& g, double epsilon) {
  return leaf_clusters_with(g, Threshold{epsilon, /*inclusive=*/false});
}

WeightedGraph cluster_graph(const std::vector<Cluster>& prev,
                            const WeightedGraph& base) {
  // Clusters sharing at least one base node are connected.
  std::unordered_map<NodeIndex, std::vector<std::uint32_t>> clusters_of;
  for (std::uint32_t ci = 0; ci < prev.size(); ++ci) {
    for (NodeIndex v : prev[ci].members) clusters_of[v].push_back(ci);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& [v, list] : clusters_of) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        pairs.emplace_back(std::min(list[i], list[j]),
                           std::max(list[i], list[j]));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges;
  edges.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    std::vector<NodeIndex> shared;
    std::set_intersection(prev[x].members.begin(), prev[x].members.end(),
                          prev[y].members.begin(), prev[y].members.end(),
                          std::back_inserter(shared));
    // Weighted mean over base edges touching the intersection: both
    // endpoints inside counts twice, one endpoint once, all divided by 3.
    double full = 0.0, partial = 0.0;
    for (NodeIndex a : shared) {
      for (const auto& [b, w] : base.neighbors(a)) {
        if (b == a) {
          full += w;  // self-loop, trivially covered
        } else if (std::binary_search(shared.begin(), shared.end(), b)) {
          if (b > a) full += w;
        } else {
          partial += w;
        }
      }
    }
    edges.emplace_back(x, y, (2.0 * full + partial) / 3.0);
  }
  return WeightedGraph::from_edges(prev.size(), std::move(edges));
}

Taxonomy build_taxonomy(const WeightedGraph& g, const EpsilonPolicy& policy,
                        TaxonomySource source, std::size_t max_levels) {
  if (g.num_nodes() == 0) throw DegenerateGraph();

  Taxonomy tax;
  tax.source = source;
  std::uint32_t next_id = 1;

  auto leaves = leaf_clusters_with(g, policy.threshold_for(g), next_id);
  next_id += static_cast<std::uint32_t>(leaves.size());
  tax.levels.push_back(std::move(leaves));

  while (tax.levels.back().size() > 1 && tax.levels.size() < max_levels) {
    const auto& prev = tax.levels.back();
    WeightedGraph gc = cluster_graph(prev, g);
    auto grouped = leaf_clusters_with(gc, policy.threshold_for(gc), next_id);
    if (grouped.size() >= prev.size()) break;  // no longer shrinking
    next_id += static_cast<std::uint32_t>(grouped.size());

    std::vector<Cluster> level;
    level.reserve(grouped.size());
    for (auto& c : grouped) {
      Cluster merged;
      merged.id = c.id;
      merged.child_clusters = std::move(c.members);
      for (std::uint32_t child : merged.child_clusters) {
        merged.members.insert(merged.members.end(),
                              prev[child].members.begin(),
                              prev[child].members.end());
      }
      std::sort(merged.members.begin(), merged.members.end());
      merged.members.erase(
          std::unique(merged.members.begin(), merged.members.end()),
          merged.members.end());
      level.push_back(std::move(merged));
    }
    tax.levels.push_back(std::move(level));
  }

  // Unroll membership into per-cluster code sets, top level downward.
  const std::size_t top = tax.levels.size() - 1;
  std::vector<std::vector<std::vector<TreeCode>>> paths(tax.levels.size());
  paths[top].resize(tax.levels[top].size());
  for (std::size_t i = 0; i < tax.levels[top].size(); ++i)
    paths[top][i] = {TreeCode{{tax.levels[top][i].id}}};
  for (std::size_t k = top; k > 0; --k) {
    paths[k - 1].resize(tax.levels[k - 1].size());
    for (std::size_t ci = 0; ci < tax.levels[k].size(); ++ci) {
      for (std::uint32_t child : tax.levels[k][ci].child_clusters) {
        for (const auto& code : paths[k][ci]) {
          TreeCode extended = code;
          extended.ids.push_back(tax.levels[k - 1][child].id);
          paths[k - 1][child].push_back(std::move(extended));
        }
      }
    }
    for (auto& set : paths[k - 1]) {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
    }
  }

  tax.node_codes.assign(g.num_nodes(), {});
  for (std::size_t ci = 0; ci < tax.levels[0].size(); ++ci) {
    for (NodeIndex v : tax.levels[0][ci].members) {
      tax.node_codes[v].insert(tax.node_codes[v].end(), paths[0][ci].begin(),
                               paths[0][ci].end());
    }
  }
  for (auto& codes : tax.node_codes) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  }
  return tax;
}

std::size_t cn(const Taxonomy& tax, std::span<const NodeIndex> z,
               ClusterScope scope) {
  if (scope == ClusterScope::kTop) {
    std::set<std::uint32_t> tops;
    for (NodeIndex v : z) {
      for (const auto& code : tax.codes(v)) tops.insert(code.ids.front());
    }
    return tops.size();
  }
  std::set<TreeCode> codes;
  for (NodeIndex v : z) {
    for (const auto& code : tax.codes(v)) codes.insert(code);
  }
  return codes.size();
}

std::size_t cs(const Taxonomy& tax, std::span<const NodeIndex> z,
               const TreeCode& cluster, ClusterScope scope) {
  std::size_t count = 0;
  for (NodeIndex v : z) {
    const auto& codes = tax.codes(v);
    bool hit = false;
    if (scope == ClusterScope::kTop) {
      for (const auto& code : codes)
        hit = hit || code.ids.front() == cluster.ids.front();
    } else {
      hit = std::binary_search(codes.begin(), codes.end(), cluster);
    }
    count += hit ? 1 : 0;
  }
  return count;
}

double sim_tax(const Taxonomy& tax, NodeIndex x, NodeIndex y) {
  const auto& cx = tax.codes(x);
  const auto& cy = tax.codes(y);
  double best = 0.0;
  for (const auto& u : cx) {
    for (const auto& v : cy) {
      std::size_t lcs = 0;
      while (lcs < u.ids.size() && lcs < v.ids.size() &&
             u.ids[lcs] == v.ids[lcs])
        ++lcs;
      best = std::max(best, 2.0 * static_cast<double>(lcs) /
                                static_cast<double>(u.depth() + v.depth()));
    }
  }
  return best;
}

void write_taxonomy(const Taxonomy& tax, const TermGraph& labels,
                    std::ostream& out) {
  for (NodeIndex v = 0; v < tax.num_base_nodes(); ++v) {
    out << labels.node_term(v).lexical << '\t';
    const auto& codes = tax.node_codes[v];
    for (std::size_t i = 0; i < codes.size(); ++i) {
      if (i) out << ',';
      out << render_code(codes[i]);
    }
    out << '\n';
  }
}

}  // namespace cocoe
