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

#include "cocoe/walker.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "cocoe/errors.hpp"

namespace cocoe {

// Runs fn(0..n-1) on up to `threads` workers. Worker exceptions are caught
// and the first one rethrown on the calling thread after the join.
void run_indexed(std::uint64_t n, int threads,
                 const std::function<void(std::uint64_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t i = cursor.fetch_add(1); i < n;
           i = cursor.fetch_add(1))
        fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      cursor.store(n);  // stop the other workers
    }
  };
  std::vector<std::thread> pool;
  const auto count = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string to_string(Heuristic h) {
  return "H" + std::to_string(static_cast<int>(h));
}

std::string to_string(TaxonomySource s) {
  return s == TaxonomySource::kWeighted ? "Tw" : "Ts";
}

std::string WalkConfig::key() const {
  return "l=" + std::to_string(length) + ";r=" + std::to_string(radius) +
         ";h=" + to_string(heuristic) + ";tax=" + to_string(taxonomy_source);
}

std::uint64_t WalkConfig::hash() const { return fnv1a(key()); }

std::vector<NodeIndex> rank_neighbors(const WeightedGraph& g,
                                      NodeIndex current,
                                      const std::vector<bool>& visited,
                                      const WalkConfig& cfg,
                                      const Taxonomy& tax, Rng& rng) {
  if (current >= g.num_nodes()) throw UnknownNode(std::to_string(current));

  struct Ranked {
    bool seen;       // visited neighbors always sort behind unvisited ones
    double key;      // heuristic criterion, larger = earlier
    std::uint64_t tiebreak;
    NodeIndex node;
  };
  auto nbrs = g.neighbors(current);
  std::vector<Ranked> ranked;
  ranked.reserve(nbrs.size());
  for (const auto& [v, w] : nbrs) {
    double key = 0.0;
    switch (cfg.heuristic) {
      case Heuristic::kH1:
        break;  // preference is the unvisited split alone
      case Heuristic::kH2:
        key = w;
        break;
      case Heuristic::kH3:
        key = sim_tax(tax, current, v);
        break;
      case Heuristic::kH4:
        key = -sim_tax(tax, current, v);
        break;
    }
    ranked.push_back(Ranked{visited[v], key, rng.next(), v});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.seen != b.seen) return !a.seen;
    if (a.key != b.key) return a.key > b.key;
    return a.tiebreak < b.tiebreak;
  });

  std::vector<NodeIndex> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back(r.node);
  return out;
}

NodeIndex select_next(const std::vector<NodeIndex>& ranked, Rng& rng) {
  if (ranked.empty()) throw EmptyNeighborhood();
  for (std::size_t i = 1; i <= ranked.size(); ++i) {
    if (rng.one_in(i + 1)) return ranked[i - 1];
  }
  return ranked[rng.next_below(ranked.size())];
}

Walk run_walk(const WeightedGraph& g, const WalkConfig& cfg,
              const Taxonomy& tax, Rng& rng) {
  std::vector<NodeIndex> eligible;
  eligible.reserve(g.num_nodes());
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (!g.is_isolated(v)) eligible.push_back(v);
  }
  if (eligible.empty()) throw NoEligibleStart();

  Walk walk;
  walk.nodes.reserve(cfg.length + 1);
  std::vector<bool> visited(g.num_nodes(), false);
  NodeIndex current = eligible[rng.next_below(eligible.size())];
  walk.nodes.push_back(current);
  visited[current] = true;
  for (std::uint32_t step = 0; step < cfg.length; ++step) {
    auto ranked = rank_neighbors(g, current, visited, cfg, tax, rng);
    current = select_next(ranked, rng);
    walk.nodes.push_back(current);
    visited[current] = true;
  }
  return walk;
}

Envelope envelope(const WeightedGraph& g, const Walk& w, std::uint32_t r) {
  // Multi-source BFS to depth r; the graph is large and envelopes are small,
  // so the frontier is kept sparse.
  std::unordered_map<NodeIndex, std::uint32_t> depth;
  std::vector<NodeIndex> frontier;
  for (NodeIndex v : w.nodes) {
    if (depth.emplace(v, 0).second) frontier.push_back(v);
  }
  for (std::uint32_t hop = 0; hop < r && !frontier.empty(); ++hop) {
    std::vector<NodeIndex> next;
    for (NodeIndex u : frontier) {
      for (const auto& [v, weight] : g.neighbors(u)) {
        (void)weight;
        if (depth.emplace(v, hop + 1).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }

  Envelope env;
  env.nodes.reserve(depth.size());
  for (const auto& [v, d] : depth) {
    (void)d;
    env.nodes.push_back(v);
  }
  std::sort(env.nodes.begin(), env.nodes.end());

  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges;
  for (std::uint32_t i = 0; i < env.nodes.size(); ++i) {
    for (const auto& [v, weight] : g.neighbors(env.nodes[i])) {
      if (v < env.nodes[i]) continue;  // visit each pair once
      auto it = std::lower_bound(env.nodes.begin(), env.nodes.end(), v);
      if (it != env.nodes.end() && *it == v) {
        edges.emplace_back(i, static_cast<NodeIndex>(it - env.nodes.begin()),
                           weight);
      }
    }
  }
  env.subgraph = WeightedGraph::from_edges(env.nodes.size(), std::move(edges));
  return env;
}

std::uint64_t sample_count(std::uint64_t num_nodes, std::uint32_t l,
                           std::uint64_t k) {
  const std::uint64_t denom = k * (static_cast<std::uint64_t>(l) + 1);
  return std::max<std::uint64_t>(1, num_nodes / denom);
}

std::vector<WalkConfig> make_grid(const std::vector<std::uint32_t>& lengths,
                                  const std::vector<std::uint32_t>& radii,
                                  const std::vector<Heuristic>& heuristics,
                                  const std::vector<TaxonomySource>& sources) {
  std::vector<WalkConfig> grid;
  for (Heuristic h : heuristics) {
    for (std::uint32_t l : lengths) {
      for (std::uint32_t r : radii) {
        for (TaxonomySource s : sources) {
          grid.push_back(WalkConfig{l, r, h, s, 0});
        }
      }
    }
  }
  return grid;
}

std::uint64_t walk_seed(std::uint64_t master_seed, const WalkConfig& cfg,
                        std::uint64_t walk_index) {
  return mix_seed(mix_seed(master_seed, cfg.hash()), walk_index);
}

void run_batch(const WeightedGraph& g, const Taxonomy& tax_w,
               const Taxonomy& tax_s, const std::vector<WalkConfig>& grid,
               std::uint64_t master_seed, std::uint64_t k, int threads,
               const std::function<void(const BatchSample&)>& sink) {
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const WalkConfig& cfg = grid[ci];
    const Taxonomy& tax =
        cfg.taxonomy_source == TaxonomySource::kWeighted ? tax_w : tax_s;
    const std::uint64_t n = sample_count(g.num_nodes(), cfg.length, k);

    std::vector<BatchSample> samples(n);
    auto job = [&](std::uint64_t wi) {
      Rng rng(walk_seed(master_seed, cfg, wi));
      BatchSample s;
      s.config_index = ci;
      s.walk_index = wi;
      s.walk = run_walk(g, cfg, tax, rng);
      s.env = envelope(g, s.walk, cfg.radius);
      samples[wi] = std::move(s);
    };

    run_indexed(n, threads, job);

    for (const auto& s : samples) sink(s);
  }
}

}  // namespace cocoe
