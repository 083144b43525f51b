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

#include <cmath>
#include <map>
#include <set>

#include "cocoe/errors.hpp"
#include "cocoe/representations.hpp"
#include "cocoe/rng.hpp"
#include "fixtures.hpp"

using namespace cocoe;
using cocoe::testing::Fragment;
using cocoe::testing::fragment_triples;
using cocoe::testing::make_triple;
using cocoe::testing::uri;

namespace {

// Random sparse binary matrix for property tests.
DistMatrix random_matrix(Rng& rng, std::size_t max_nodes) {
  std::vector<Triple> triples;
  const auto n = 1 + rng.next_below(max_nodes);
  const auto m = 1 + rng.next_below(3 * max_nodes);
  for (std::uint64_t i = 0; i < m; ++i) {
    triples.push_back(
        make_triple("urn:n" + std::to_string(rng.next_below(n)),
                    "urn:p" + std::to_string(rng.next_below(3)),
                    "urn:n" + std::to_string(rng.next_below(n))));
  }
  return build_dist_matrix(build_direct_graph(TripleSet(triples, "rand")));
}

std::string column_desc(const DistMatrix& m, std::uint32_t c) {
  const auto& col = m.columns[c];
  return (col.kind == ColumnKind::kOutgoing ? "out" : "in") +
         std::string(":") + m.terms->term(col.first).lexical + "," +
         m.terms->term(col.second).lexical;
}

}  // namespace

TEST_CASE("direct graph of the fragment") {
  auto g = build_direct_graph(fragment_triples());
  CHECK(g.num_nodes() == 4);  // predicates are not nodes
  CHECK(g.edges.size() == 4);
  CHECK(g.node_of(uri("urn:A")).has_value());
  CHECK(!g.node_of(uri("urn:r")).has_value());
}

TEST_CASE("direct graph edge cases") {
  CHECK(build_direct_graph(TripleSet({}, "empty")).num_nodes() == 0);

  auto loop =
      build_direct_graph(TripleSet({make_triple("urn:x", "urn:p", "urn:x")},
                                   "loop"));
  CHECK(loop.num_nodes() == 1);
  REQUIRE(loop.edges.size() == 1);
  CHECK(loop.edges[0].from == loop.edges[0].to);
}

TEST_CASE("the 4x7 matrix of the fragment") {
  auto f = Fragment::build();
  const auto& m = f.matrix;
  REQUIRE(m.num_rows() == 4);
  REQUIRE(m.num_cols() == 7);
  CHECK(m.nonzeros() == 8);

  // Row contents by (kind, first, second) term names.
  auto row_set = [&](NodeIndex r) {
    std::set<std::string> out;
    for (auto c : m.row_cells(r)) out.insert(column_desc(m, c));
    return out;
  };
  CHECK(row_set(f.a) == std::set<std::string>{"out:urn:r,urn:B"});
  CHECK(row_set(f.b) ==
        std::set<std::string>{"out:urn:s,urn:D", "out:urn:t,urn:C",
                              "in:urn:A,urn:r", "in:urn:D,urn:r"});
  CHECK(row_set(f.c) == std::set<std::string>{"in:urn:B,urn:t"});
  CHECK(row_set(f.d) ==
        std::set<std::string>{"out:urn:r,urn:B", "in:urn:B,urn:s"});
}

TEST_CASE("matrix edge cases") {
  auto empty = build_dist_matrix(build_direct_graph(TripleSet({}, "e")));
  CHECK(empty.num_rows() == 0);
  CHECK(empty.num_cols() == 0);

  auto single = build_dist_matrix(
      build_direct_graph(TripleSet({make_triple("urn:A", "urn:r", "urn:B")},
                                   "s")));
  REQUIRE(single.num_rows() == 2);
  REQUIRE(single.num_cols() == 2);
  // Row A holds (r,B), row B holds (A,r).
  CHECK(single.row_cells(*single.row_of(uri("urn:A"))).size() == 1);
  CHECK(single.row_cells(*single.row_of(uri("urn:B"))).size() == 1);
  CHECK(single.nonzeros() == 2);
}

TEST_CASE("chi-squared scores of the fragment") {
  auto f = Fragment::build();
  CHECK(f.matrix.expected_value() == doctest::Approx(8.0 / 7.0).epsilon(1e-12));
  for (std::uint32_t c = 0; c < f.matrix.num_cols(); ++c) {
    const double expected =
        column_desc(f.matrix, c) == "out:urn:r,urn:B" ? 9.0 / 14.0 : 1.0 / 56.0;
    CHECK(std::abs(f.matrix.col_scores[c] - expected) < 1e-12);
  }
}

TEST_CASE("chi-squared of uniform columns is zero") {
  // Two triples whose four columns all have sum 1 = mean.
  auto m = build_dist_matrix(build_direct_graph(
      TripleSet({make_triple("urn:A", "urn:p", "urn:B"),
                 make_triple("urn:C", "urn:q", "urn:D")},
                "u")));
  for (double s : m.col_scores) CHECK(s == doctest::Approx(0.0));
}

TEST_CASE("chi-squared on empty matrix throws") {
  auto empty = build_dist_matrix(build_direct_graph(TripleSet({}, "e")));
  CHECK_THROWS_AS(chi_squared(empty), EmptyMatrix);
}

TEST_CASE("reduction keeps the top-scored columns") {
  auto f = Fragment::build();

  auto top1 = reduce_dimensions(f.matrix, 1);
  REQUIRE(top1.num_cols() == 1);
  CHECK(column_desc(top1, 0) == "out:urn:r,urn:B");
  CHECK(top1.num_rows() == 4);  // rows survive even when zeroed

  auto same = reduce_dimensions(f.matrix, 7);
  CHECK(same.num_cols() == 7);
  CHECK(same.cells == f.matrix.cells);

  // k=3: (r,B) plus the lexicographically first two tied columns, which are
  // (A,r) and (B,s).
  auto top3 = reduce_dimensions(f.matrix, 3);
  REQUIRE(top3.num_cols() == 3);
  std::set<std::string> kept;
  for (std::uint32_t c = 0; c < 3; ++c) kept.insert(column_desc(top3, c));
  CHECK(kept == std::set<std::string>{"out:urn:r,urn:B", "in:urn:A,urn:r",
                                      "in:urn:B,urn:s"});
}

TEST_CASE("cosine on the fragment") {
  auto f = Fragment::build();
  CHECK(cosine(f.matrix, f.a, f.d) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cosine(f.matrix, f.a, f.a) == doctest::Approx(1.0));
  CHECK(cosine(f.matrix, f.a, f.b) == doctest::Approx(0.0));

  auto reduced = reduce_dimensions(f.matrix, 1);
  CHECK(cosine(reduced, f.a, f.d) == doctest::Approx(1.0));
  // Rows zeroed by the reduction fall back to similarity 0.
  CHECK(cosine(reduced, f.b, f.b) == doctest::Approx(0.0));

  CHECK_THROWS_AS(cosine(f.matrix, uri("urn:A"), uri("urn:missing")),
                  UnknownEntity);
}

TEST_CASE("weighted graph of the fragment") {
  auto f = Fragment::build();
  const auto& gw = f.weighted;
  CHECK(gw.num_nodes() == 4);
  CHECK(gw.graph.num_edges() == 3);
  CHECK(*gw.graph.edge_weight(f.a, f.b) ==
        doctest::Approx(9.0 / 14.0).epsilon(1e-12));
  CHECK(*gw.graph.edge_weight(f.b, f.c) ==
        doctest::Approx(1.0 / 56.0).epsilon(1e-12));
  // Both (B,s,D) and (D,r,B) exist, so the (r,B) column dominates the pair.
  CHECK(*gw.graph.edge_weight(f.b, f.d) ==
        doctest::Approx(9.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("weighted graph keeps zero-weight edges") {
  // A single triple: both its columns have sum 1 = mean, so chi-squared is 0.
  auto direct = build_direct_graph(
      TripleSet({make_triple("urn:A", "urn:r", "urn:B")}, "s"));
  auto m = build_dist_matrix(direct);
  auto gw = build_weighted_graph(direct, m);
  CHECK(gw.graph.num_edges() == 1);
  CHECK(*gw.graph.edge_weight(0, 1) == doctest::Approx(0.0));

  auto empty = build_direct_graph(TripleSet({}, "e"));
  auto ge = build_weighted_graph(empty, build_dist_matrix(empty));
  CHECK(ge.num_nodes() == 0);
  CHECK(ge.graph.num_edges() == 0);
}

TEST_CASE("similarity graph on the fragment") {
  auto f = Fragment::build();
  auto reduced = reduce_dimensions(f.matrix, 1);
  auto gs = build_similarity_graph(reduced, 0.5);
  CHECK(gs.num_nodes() == 4);
  CHECK(gs.graph.num_edges() == 1);
  CHECK(*gs.graph.edge_weight(f.a, f.d) == doctest::Approx(1.0));

  // On the full matrix nothing clears 0.99: the best off-diagonal cosine is
  // about 0.707.
  auto strict = build_similarity_graph(f.matrix, 0.99);
  CHECK(strict.graph.num_edges() == 0);
}

TEST_CASE("identical rows are always similar") {
  auto m = build_dist_matrix(build_direct_graph(
      TripleSet({make_triple("urn:x", "urn:p", "urn:T"),
                 make_triple("urn:y", "urn:p", "urn:T")},
                "twins")));
  auto x = *m.row_of(uri("urn:x"));
  auto y = *m.row_of(uri("urn:y"));
  auto gs = build_similarity_graph(m, 0.999);
  CHECK(*gs.graph.edge_weight(x, y) == doctest::Approx(1.0));
}

TEST_CASE("column sums account for every triple twice") {
  Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    auto m = random_matrix(rng, 12);
    std::uint64_t total = 0;
    for (auto s : m.column_sums()) total += s;
    CHECK(total == m.nonzeros());

    // Each distinct triple contributes one outgoing and one incoming cell.
    CHECK(m.nonzeros() % 2 == 0);

    double residual = 0.0;
    const double expected = m.expected_value();
    for (auto s : m.column_sums())
      residual += static_cast<double>(s) - expected;
    CHECK(std::abs(residual) < 1e-9);
    for (double s : m.col_scores) CHECK(s >= 0.0);
  }
}

TEST_CASE("cosine is symmetric and bounded") {
  Rng rng(23);
  for (int round = 0; round < 10; ++round) {
    auto m = random_matrix(rng, 10);
    for (NodeIndex x = 0; x < m.num_rows(); ++x) {
      for (NodeIndex y = 0; y < m.num_rows(); ++y) {
        const double s = cosine(m, x, y);
        CHECK(s == doctest::Approx(cosine(m, y, x)));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0 + 1e-12);
      }
      if (!m.row_cells(x).empty())
        CHECK(cosine(m, x, x) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("weighted graph preserves the node universe") {
  Rng rng(37);
  for (int round = 0; round < 10; ++round) {
    std::vector<Triple> triples;
    const auto n = 2 + rng.next_below(10);
    for (std::uint64_t i = 0; i < 2 * n; ++i) {
      triples.push_back(
          make_triple("urn:n" + std::to_string(rng.next_below(n)),
                      "urn:p" + std::to_string(rng.next_below(2)),
                      "urn:n" + std::to_string(rng.next_below(n))));
    }
    auto direct = build_direct_graph(TripleSet(triples, "r"));
    auto m = build_dist_matrix(direct);
    auto gw = build_weighted_graph(direct, m);
    CHECK(gw.nodes == direct.nodes);
    // Collapsing directed pairs can only shrink the edge count.
    CHECK(gw.graph.num_edges() <= direct.edges.size());
  }
}

TEST_CASE("similarity graph matches all-pairs brute force") {
  Rng rng(41);
  for (int round = 0; round < 20; ++round) {
    auto m = random_matrix(rng, 15);  // up to ~45 rows stays brute-forceable
    const double eps = rng.next_double() * 0.9;
    auto gs = build_similarity_graph(m, eps);

    std::uint64_t expected_edges = 0;
    for (NodeIndex x = 0; x < m.num_rows(); ++x) {
      for (NodeIndex y = x + 1; y < m.num_rows(); ++y) {
        const double s = cosine(m, x, y);
        const bool has = gs.graph.has_edge(x, y);
        CHECK(has == (s > eps));
        if (s > eps) {
          ++expected_edges;
          CHECK(*gs.graph.edge_weight(x, y) == doctest::Approx(s));
        }
      }
    }
    CHECK(gs.graph.num_edges() == expected_edges);
  }
}

TEST_CASE("similarity edges are monotone in the threshold") {
  Rng rng(43);
  auto m = random_matrix(rng, 12);
  auto loose = build_similarity_graph(m, 0.2);
  auto tight = build_similarity_graph(m, 0.6);
  for (const auto& [u, v, w] : tight.graph.edge_list()) {
    (void)w;
    CHECK(loose.graph.has_edge(u, v));
  }
}
