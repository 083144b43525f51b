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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "cocoe/graph.hpp"
#include "cocoe/term.hpp"

namespace cocoe {

enum class ColumnKind : std::uint8_t { kOutgoing = 0, kIncoming = 1 };

// One context dimension of the distributional matrix: an outgoing column is
// a (predicate, object) pair, an incoming one a (subject, predicate) pair.
// Ordering is by (first, second, kind), i.e. lexicographic column identity.
struct ContextColumn {
  ColumnKind kind = ColumnKind::kOutgoing;
  TermId first = 0;
  TermId second = 0;

  friend auto operator<=>(const ContextColumn& a, const ContextColumn& b) {
    if (auto c = a.first <=> b.first; c != 0) return c;
    if (auto c = a.second <=> b.second; c != 0) return c;
    return a.kind <=> b.kind;
  }
  friend bool operator==(const ContextColumn&, const ContextColumn&) = default;
};

// Sparse binary entity-by-context matrix with per-column chi-squared scores.
class DistMatrix {
 public:
  std::shared_ptr<const TermTable> terms;
  std::vector<TermId> rows;             // = dataset node set, sorted
  std::vector<ContextColumn> columns;   // sorted by column identity
  std::vector<std::size_t> row_ptr;     // CSR offsets, size rows+1
  std::vector<std::uint32_t> cells;     // column indices per row, sorted
  std::vector<double> col_scores;       // chi-squared per column

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return columns.size(); }
  std::uint64_t nonzeros() const { return cells.size(); }

  std::span<const std::uint32_t> row_cells(std::size_t r) const {
    return {cells.data() + row_ptr[r], cells.data() + row_ptr[r + 1]};
  }
  std::optional<NodeIndex> row_of(const Term& t) const;
  const Term& row_term(std::size_t r) const { return terms->term(rows[r]); }

  std::vector<std::uint64_t> column_sums() const;
  // Mean column frequency E(M) = nonzeros / |C|.
  double expected_value() const;

  std::string column_name(std::uint32_t c) const;
};

DirectGraph build_direct_graph(const TripleSet& triples);

// Matrix per the context-column construction; chi-squared scores are filled
// in over the full column set.
DistMatrix build_dist_matrix(const DirectGraph& g);

// chi2(c) = (O(c) - E)^2 / E with O the column sum and E the mean column sum.
// Throws EmptyMatrix when the matrix has no columns.
std::vector<double> chi_squared(const DistMatrix& m);

// Keep the k best-scored columns; ties at the cutoff go to the
// lexicographically smaller column identity. Rows are preserved even when
// they become empty.
DistMatrix reduce_dimensions(const DistMatrix& m, std::size_t k);

double cosine(const DistMatrix& m, NodeIndex x, NodeIndex y);
double cosine(const DistMatrix& m, const Term& x, const Term& y);

// Undirected projection of g weighted by the chi-squared scores of the
// context columns adjacent to each edge (maximum over the four column sets).
TermGraph build_weighted_graph(const DirectGraph& g,
                               const DistMatrix& scored_matrix);

// Graph over all matrix rows with an edge wherever cosine > epsilon.
// Candidate pairs come from an inverted index over nonzero columns, which is
// exact: rows sharing no column have cosine 0.
TermGraph build_similarity_graph(const DistMatrix& m, double epsilon);

}  // namespace cocoe
