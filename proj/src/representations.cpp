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

#include "cocoe/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "cocoe/errors.hpp"

namespace cocoe {

namespace {

struct ColumnHash {
  std::size_t operator()(const ContextColumn& c) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    mix(c.first);
    mix(c.second);
    mix(static_cast<std::uint64_t>(c.kind));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::optional<NodeIndex> DistMatrix::row_of(const Term& t) const {
  auto id = terms->find(t);
  if (id < 0) return std::nullopt;
  auto it =
      std::lower_bound(rows.begin(), rows.end(), static_cast<TermId>(id));
  if (it == rows.end() || *it != static_cast<TermId>(id)) return std::nullopt;
  return static_cast<NodeIndex>(it - rows.begin());
}

std::vector<std::uint64_t> DistMatrix::column_sums() const {
  std::vector<std::uint64_t> sums(columns.size(), 0);
  for (std::uint32_t c : cells) ++sums[c];
  return sums;
}

double DistMatrix::expected_value() const {
  if (columns.empty()) throw EmptyMatrix();
  return static_cast<double>(cells.size()) / static_cast<double>(columns.size());
}

std::string DistMatrix::column_name(std::uint32_t c) const {
  const auto& col = columns[c];
  return "(" + terms->term(col.first).lexical + "," +
         terms->term(col.second).lexical + ")";
}

DirectGraph build_direct_graph(const TripleSet& triples) {
  DirectGraph g;
  g.terms = TermTable::build(triples);

  std::vector<TermId> nodes;
  nodes.reserve(triples.size() * 2);
  for (const auto& t : triples.triples()) {
    nodes.push_back(g.terms->id_of(t.s));
    nodes.push_back(g.terms->id_of(t.o));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes = std::move(nodes);

  auto node_index = [&g](TermId id) {
    return static_cast<NodeIndex>(
        std::lower_bound(g.nodes.begin(), g.nodes.end(), id) -
        g.nodes.begin());
  };
  g.edges.reserve(triples.size());
  for (const auto& t : triples.triples()) {
    g.edges.push_back(DirectEdge{node_index(g.terms->id_of(t.s)),
                                 node_index(g.terms->id_of(t.o)),
                                 g.terms->id_of(t.p)});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

DistMatrix build_dist_matrix(const DirectGraph& g) {
  DistMatrix m;
  m.terms = g.terms;
  m.rows = g.nodes;

  // Each triple (s,p,o) sets row s at outgoing column (p,o) and row o at
  // incoming column (s,p).
  std::vector<ContextColumn> cols;
  cols.reserve(g.edges.size() * 2);
  for (const auto& e : g.edges) {
    cols.push_back(
        ContextColumn{ColumnKind::kOutgoing, e.predicate, g.nodes[e.to]});
    cols.push_back(
        ContextColumn{ColumnKind::kIncoming, g.nodes[e.from], e.predicate});
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  m.columns = std::move(cols);

  std::unordered_map<ContextColumn, std::uint32_t, ColumnHash> col_index;
  col_index.reserve(m.columns.size() * 2);
  for (std::uint32_t i = 0; i < m.columns.size(); ++i)
    col_index.emplace(m.columns[i], i);

  std::vector<std::pair<NodeIndex, std::uint32_t>> entries;
  entries.reserve(g.edges.size() * 2);
  for (const auto& e : g.edges) {
    entries.emplace_back(
        e.from, col_index.at(ContextColumn{ColumnKind::kOutgoing, e.predicate,
                                           g.nodes[e.to]}));
    entries.emplace_back(
        e.to, col_index.at(ContextColumn{ColumnKind::kIncoming,
                                         g.nodes[e.from], e.predicate}));
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

  m.row_ptr.assign(m.rows.size() + 1, 0);
  m.cells.reserve(entries.size());
  for (const auto& [r, c] : entries) {
    ++m.row_ptr[r + 1];
    m.cells.push_back(c);
  }
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    m.row_ptr[r + 1] += m.row_ptr[r];

  if (!m.columns.empty()) m.col_scores = chi_squared(m);
  return m;
}

std::vector<double> chi_squared(const DistMatrix& m) {
  if (m.columns.empty()) throw EmptyMatrix();
  const double expected = m.expected_value();
  auto sums = m.column_sums();
  std::vector<double> scores(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const double diff = static_cast<double>(sums[i]) - expected;
    scores[i] = diff * diff / expected;
  }
  return scores;
}

DistMatrix reduce_dimensions(const DistMatrix& m, std::size_t k) {
  if (k >= m.num_cols()) return m;

  std::vector<std::uint32_t> order(m.num_cols());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&m](std::uint32_t a, std::uint32_t b) {
    if (m.col_scores[a] != m.col_scores[b])
      return m.col_scores[a] > m.col_scores[b];
    return m.columns[a] < m.columns[b];  // columns are identity-sorted
  });
  order.resize(k);
  std::sort(order.begin(), order.end());

  // Remap kept columns to their new dense indices; original identity order
  // is preserved because the kept list is re-sorted.
  constexpr auto kDropped = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remap(m.num_cols(), kDropped);
  DistMatrix out;
  out.terms = m.terms;
  out.rows = m.rows;
  out.columns.reserve(k);
  out.col_scores.reserve(k);
  for (std::uint32_t new_idx = 0; new_idx < order.size(); ++new_idx) {
    remap[order[new_idx]] = new_idx;
    out.columns.push_back(m.columns[order[new_idx]]);
    out.col_scores.push_back(m.col_scores[order[new_idx]]);
  }

  out.row_ptr.assign(m.num_rows() + 1, 0);
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::uint32_t c : m.row_cells(r)) {
      if (remap[c] != kDropped) out.cells.push_back(remap[c]);
    }
    out.row_ptr[r + 1] = out.cells.size();
  }
  return out;
}

double cosine(const DistMatrix& m, NodeIndex x, NodeIndex y) {
  auto cx = m.row_cells(x);
  auto cy = m.row_cells(y);
  if (cx.empty() || cy.empty()) return 0.0;
  std::size_t shared = 0;
  for (std::size_t i = 0, j = 0; i < cx.size() && j < cy.size();) {
    if (cx[i] == cy[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (cx[i] < cy[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(shared) /
         (std::sqrt(static_cast<double>(cx.size())) *
          std::sqrt(static_cast<double>(cy.size())));
}

double cosine(const DistMatrix& m, const Term& x, const Term& y) {
  auto rx = m.row_of(x);
  if (!rx) throw UnknownEntity(x.lexical);
  auto ry = m.row_of(y);
  if (!ry) throw UnknownEntity(y.lexical);
  return cosine(m, *rx, *ry);
}

TermGraph build_weighted_graph(const DirectGraph& g,
                               const DistMatrix& scored_matrix) {
  const auto& m = scored_matrix;
  std::unordered_map<ContextColumn, std::uint32_t, ColumnHash> col_index;
  col_index.reserve(m.columns.size() * 2);
  for (std::uint32_t i = 0; i < m.columns.size(); ++i)
    col_index.emplace(m.columns[i], i);
  auto score_of = [&](ColumnKind kind, TermId a, TermId b) {
    auto it = col_index.find(ContextColumn{kind, a, b});
    return it == col_index.end() ? 0.0 : m.col_scores[it->second];
  };

  // Group parallel directed edges by unordered node pair.
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<DirectEdge>> pairs;
  for (const auto& e : g.edges) {
    pairs[{std::min(e.from, e.to), std::max(e.from, e.to)}].push_back(e);
  }

  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, directed] : pairs) {
    // Each directed edge a --p--> b contributes its two adjacent context
    // columns, the outgoing (p,b) and the incoming (a,p). Taken over both
    // orientations of the pair this is exactly the four column sets of the
    // weight definition.
    double weight = 0.0;
    for (const auto& e : directed) {
      const TermId a = g.nodes[e.from], b = g.nodes[e.to];
      weight = std::max(weight, score_of(ColumnKind::kOutgoing, e.predicate, b));
      weight = std::max(weight, score_of(ColumnKind::kIncoming, a, e.predicate));
    }
    edges.emplace_back(key.first, key.second, weight);
  }

  TermGraph out;
  out.terms = g.terms;
  out.nodes = g.nodes;
  out.graph = WeightedGraph::from_edges(g.num_nodes(), std::move(edges));
  return out;
}

TermGraph build_similarity_graph(const DistMatrix& m, double epsilon) {
  // Inverted index: rows per column. Candidate pairs share >= 1 column.
  std::vector<std::vector<NodeIndex>> by_column(m.num_cols());
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::uint32_t c : m.row_cells(r))
      by_column[c].push_back(static_cast<NodeIndex>(r));
  }

  std::vector<std::pair<NodeIndex, NodeIndex>> candidates;
  for (const auto& rows : by_column) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        candidates.emplace_back(rows[i], rows[j]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges;
  for (const auto& [u, v] : candidates) {
    double sim = cosine(m, u, v);
    if (sim > epsilon) edges.emplace_back(u, v, sim);
  }

  TermGraph out;
  out.terms = m.terms;
  out.nodes = m.rows;
  out.graph = WeightedGraph::from_edges(m.num_rows(), std::move(edges));
  return out;
}

}  // namespace cocoe
