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

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#include "cocoe/errors.hpp"
#include "cocoe/walker.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cocoe;
using cocoe::testing::example_policy;
using cocoe::testing::Fragment;
using cocoe::testing::random_connected_graph;

namespace {

WeightedGraph graph_from(
    std::size_t n, std::vector<std::tuple<NodeIndex, NodeIndex, double>> e) {
  return WeightedGraph::from_edges(n, std::move(e));
}

Taxonomy tiny_taxonomy(const WeightedGraph& g) {
  return build_taxonomy(g, EpsilonPolicy::min_weight(),
                        TaxonomySource::kWeighted);
}

WalkConfig config(std::uint32_t l, std::uint32_t r, Heuristic h,
                  TaxonomySource s = TaxonomySource::kWeighted) {
  return WalkConfig{l, r, h, s, 0};
}

std::string serialize_sample(const BatchSample& s) {
  std::ostringstream out;
  out << s.config_index << '|' << s.walk_index << '|';
  for (auto v : s.walk.nodes) out << v << ',';
  out << '|';
  for (auto v : s.env.nodes) out << v << ',';
  out << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("H2 ranks by edge weight with unvisited first") {
  auto f = Fragment::build();
  auto tax = tiny_taxonomy(f.weighted.graph);
  std::vector<bool> visited(4, false);
  visited[f.b] = true;

  Rng rng(5);
  auto cfg = config(2, 0, Heuristic::kH2);
  auto ranked =
      rank_neighbors(f.weighted.graph, f.b, visited, cfg, tax, rng);
  REQUIRE(ranked.size() == 3);
  // A and D share the top weight 9/14 in random order; C (1/56) comes last.
  CHECK(std::set<NodeIndex>{ranked[0], ranked[1]} ==
        std::set<NodeIndex>{f.a, f.d});
  CHECK(ranked[2] == f.c);

  // A visited neighbor drops behind unvisited ones regardless of weight.
  visited[f.a] = true;
  auto ranked2 =
      rank_neighbors(f.weighted.graph, f.b, visited, cfg, tax, rng);
  CHECK(ranked2[0] == f.d);
  CHECK(ranked2[1] == f.c);
  CHECK(ranked2[2] == f.a);
}

TEST_CASE("single neighbor ranks alone under any heuristic") {
  auto f = Fragment::build();
  auto tax = tiny_taxonomy(f.weighted.graph);
  std::vector<bool> visited(4, false);
  for (Heuristic h :
       {Heuristic::kH1, Heuristic::kH2, Heuristic::kH3, Heuristic::kH4}) {
    Rng rng(1);
    auto ranked = rank_neighbors(f.weighted.graph, f.a, visited,
                                 config(2, 0, h), tax, rng);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0] == f.b);
  }
}

TEST_CASE("H3 and H4 order the unvisited group in reverse") {
  // Star center 0 with leaves at distinct taxonomy similarities.
  auto g = graph_from(
      5, {{0, 1, 0.9}, {0, 2, 0.8}, {0, 3, 0.7}, {0, 4, 0.6}, {1, 2, 0.9}});
  auto tax = build_taxonomy(g, EpsilonPolicy::fixed(0.55),
                            TaxonomySource::kWeighted);
  std::vector<bool> visited(5, false);
  auto cfg3 = config(2, 0, Heuristic::kH3);
  auto cfg4 = config(2, 0, Heuristic::kH4);

  Rng rng_a(3), rng_b(3);
  auto up = rank_neighbors(g, 0, visited, cfg3, tax, rng_a);
  auto down = rank_neighbors(g, 0, visited, cfg4, tax, rng_b);

  std::map<NodeIndex, double> sims;
  for (NodeIndex v = 1; v < 5; ++v) sims[v] = sim_tax(tax, 0, v);
  std::set<double> distinct;
  for (auto& [v, s] : sims) distinct.insert(s);
  if (distinct.size() == sims.size()) {
    auto reversed = down;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(up == reversed);
  }
  // Regardless of ties, H3's first choice maximizes similarity and H4's
  // minimizes it.
  CHECK(sims[up.front()] == std::max({sims[1], sims[2], sims[3], sims[4]}));
  CHECK(sims[down.front()] == std::min({sims[1], sims[2], sims[3], sims[4]}));
}

TEST_CASE("select_next single element") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i)
    CHECK(select_next({42}, rng) == 42);
  CHECK_THROWS_AS(select_next({}, rng), EmptyNeighborhood);
}

TEST_CASE("select_next rank-1 probability on a pair is about two thirds") {
  Rng rng(2024);
  const int draws = 100000;
  int first = 0;
  for (int i = 0; i < draws; ++i) {
    if (select_next({7, 9}, rng) == 7) ++first;
  }
  const double p = static_cast<double>(first) / draws;
  CHECK(p == doctest::Approx(2.0 / 3.0).epsilon(0.015));
}

TEST_CASE("select_next is deterministic under a fixed seed") {
  std::vector<NodeIndex> ranked{1, 2, 3, 4};
  std::vector<NodeIndex> a, b;
  {
    Rng rng(555);
    for (int i = 0; i < 200; ++i) a.push_back(select_next(ranked, rng));
  }
  {
    Rng rng(555);
    for (int i = 0; i < 200; ++i) b.push_back(select_next(ranked, rng));
  }
  CHECK(a == b);
}

TEST_CASE("walks follow adjacency and length") {
  auto f = Fragment::build();
  auto tax = tiny_taxonomy(f.weighted.graph);

  // From A the only possible second node is B.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    auto walk = run_walk(f.weighted.graph, config(2, 0, Heuristic::kH1), tax,
                         rng);
    REQUIRE(walk.nodes.size() == 3);
    if (walk.nodes[0] == f.a) CHECK(walk.nodes[1] == f.b);
    for (std::size_t i = 0; i + 1 < walk.nodes.size(); ++i)
      CHECK(f.weighted.graph.has_edge(walk.nodes[i], walk.nodes[i + 1]));
  }

  auto clique = graph_from(2, {{0, 1, 1.0}});
  auto ctax = tiny_taxonomy(clique);
  Rng rng(3);
  auto walk = run_walk(clique, config(1, 0, Heuristic::kH1), ctax, rng);
  CHECK(walk.nodes.size() == 2);
  CHECK(walk.nodes[0] != walk.nodes[1]);
}

TEST_CASE("same seed, same walk") {
  Rng gen(77);
  auto g = random_connected_graph(gen, 40);
  auto tax = tiny_taxonomy(g);
  auto cfg = config(10, 1, Heuristic::kH2);
  Rng r1(123456), r2(123456);
  auto w1 = run_walk(g, cfg, tax, r1);
  auto w2 = run_walk(g, cfg, tax, r2);
  CHECK(w1.nodes == w2.nodes);
}

TEST_CASE("isolated-only graphs cannot start a walk") {
  WeightedGraph g(3);  // no edges
  auto cfg = config(2, 0, Heuristic::kH1);
  Taxonomy tax;
  tax.node_codes.assign(3, {TreeCode{{1}}});
  Rng rng(1);
  CHECK_THROWS_AS(run_walk(g, cfg, tax, rng), NoEligibleStart);
}

TEST_CASE("envelope radii") {
  auto f = Fragment::build();
  Walk walk{{f.a, f.b}};

  auto e0 = envelope(f.weighted.graph, walk, 0);
  CHECK(e0.nodes == std::vector<NodeIndex>{f.a, f.b});
  CHECK(e0.subgraph.num_edges() == 1);

  auto e1 = envelope(f.weighted.graph, walk, 1);
  CHECK(e1.nodes.size() == 4);  // B's neighbors pull in C and D

  // Saturation at the graph diameter.
  auto efar = envelope(f.weighted.graph, walk, 10);
  CHECK(efar.nodes.size() == 4);
  CHECK(efar.subgraph.num_edges() == f.weighted.graph.num_edges());
}

TEST_CASE("envelopes grow monotonically with the radius") {
  Rng gen(31);
  for (int round = 0; round < 20; ++round) {
    auto g = random_connected_graph(gen, 30);
    auto tax = tiny_taxonomy(g);
    Rng rng(round);
    auto walk = run_walk(g, config(5, 0, Heuristic::kH1), tax, rng);
    std::size_t prev = 0;
    for (std::uint32_t r = 0; r <= 3; ++r) {
      auto env = envelope(g, walk, r);
      CHECK(env.nodes.size() >= prev);
      prev = env.nodes.size();
      for (auto v : walk.nodes)
        CHECK(std::binary_search(env.nodes.begin(), env.nodes.end(), v));
    }
  }
}

TEST_CASE("sample counts from the reference graph sizes") {
  CHECK(sample_count(28102, 10, 3) == 851);
  CHECK(sample_count(27924, 2, 4) == 2327);
  CHECK(sample_count(5, 20, 1) == 1);  // clamped to a single sample
}

TEST_CASE("the default grid spans 48 configs") {
  auto grid = make_grid({2, 10, 20}, {0, 1},
                        {Heuristic::kH1, Heuristic::kH2, Heuristic::kH3,
                         Heuristic::kH4},
                        {TaxonomySource::kWeighted,
                         TaxonomySource::kSimilarity});
  CHECK(grid.size() == 48);
  std::set<std::string> keys;
  for (const auto& cfg : grid) keys.insert(cfg.key());
  CHECK(keys.size() == 48);
}

TEST_CASE("batches are deterministic and complete") {
  Rng gen(41);
  auto g = random_connected_graph(gen, 60);
  auto tax = tiny_taxonomy(g);
  auto grid = make_grid({2, 5}, {0, 1}, {Heuristic::kH1, Heuristic::kH2},
                        {TaxonomySource::kWeighted});

  auto run = [&](int threads) {
    std::string out;
    std::vector<std::uint64_t> per_config(grid.size(), 0);
    run_batch(g, tax, tax, grid, 4242, 2, threads,
              [&](const BatchSample& s) {
                out += serialize_sample(s);
                ++per_config[s.config_index];
              });
    for (std::size_t ci = 0; ci < grid.size(); ++ci)
      CHECK(per_config[ci] == sample_count(g.num_nodes(), grid[ci].length, 2));
    return out;
  };

  auto serial = run(1);
  auto parallel = run(8);
  CHECK(serial == parallel);
  CHECK(run(1) == serial);
}

TEST_CASE("worker exceptions surface on the calling thread") {
  WeightedGraph isolated(4);  // no edges: every walk must fail
  Taxonomy tax;
  tax.node_codes.assign(4, {TreeCode{{1}}});
  auto grid = make_grid({2}, {0}, {Heuristic::kH1},
                        {TaxonomySource::kWeighted});
  CHECK_THROWS_AS(run_batch(isolated, tax, tax, grid, 1, 1, 4,
                            [](const BatchSample&) {}),
                  NoEligibleStart);

  std::atomic<int> ran{0};
  CHECK_THROWS_AS(run_indexed(100, 4,
                              [&ran](std::uint64_t i) {
                                ran.fetch_add(1);
                                if (i == 3) throw EmptyNeighborhood();
                              }),
                  EmptyNeighborhood);
  CHECK(ran.load() >= 1);
}

TEST_CASE("H1 picks an unvisited node at least half the time") {
  Rng gen(53);
  auto g = random_connected_graph(gen, 25);
  auto tax = tiny_taxonomy(g);
  auto cfg = config(2, 0, Heuristic::kH1);

  Rng rng(808);
  int eligible_steps = 0, unvisited_picks = 0;
  for (int i = 0; i < 4000 && eligible_steps < 10000; ++i) {
    std::vector<bool> visited(g.num_nodes(), false);
    NodeIndex current = static_cast<NodeIndex>(rng.next_below(g.num_nodes()));
    if (g.is_isolated(current)) continue;
    visited[current] = true;
    for (int step = 0; step < 4; ++step) {
      auto nbrs = g.neighbors(current);
      bool any_unvisited = false;
      for (const auto& [v, w] : nbrs) {
        (void)w;
        if (!visited[v]) any_unvisited = true;
      }
      auto ranked = rank_neighbors(g, current, visited, cfg, tax, rng);
      NodeIndex next = select_next(ranked, rng);
      if (any_unvisited) {
        ++eligible_steps;
        if (!visited[next]) ++unvisited_picks;
      }
      visited[next] = true;
      current = next;
    }
  }
  REQUIRE(eligible_steps >= 10000);
  CHECK(static_cast<double>(unvisited_picks) / eligible_steps >= 0.5);
}

TEST_CASE("visit counts across a batch are conserved") {
  Rng gen(61);
  auto g = random_connected_graph(gen, 50);
  auto tax = tiny_taxonomy(g);
  auto grid = make_grid({3, 7}, {0}, {Heuristic::kH1, Heuristic::kH3},
                        {TaxonomySource::kWeighted});

  std::uint64_t visits = 0, expected = 0;
  run_batch(g, tax, tax, grid, 11, 2, 1, [&](const BatchSample& s) {
    visits += s.walk.nodes.size();
  });
  for (const auto& cfg : grid) {
    expected +=
        sample_count(g.num_nodes(), cfg.length, 2) * (cfg.length + 1);
  }
  CHECK(visits == expected);
}
