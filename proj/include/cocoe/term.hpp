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
#include <memory>
#include <string>
#include <vector>

namespace cocoe {

enum class TermKind : std::uint8_t { kUri = 0, kLiteral = 1 };

// A node or predicate of the data. URIs hold the raw IRI (no angle brackets),
// literals hold the full lexical token verbatim, quotes and datatype/language
// tag included. Blank nodes are folded into URIs with a "_:" prefix.
struct Term {
  TermKind kind = TermKind::kUri;
  std::string lexical;

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
  Term s;  // kind == kUri
  Term p;  // kind == kUri
  Term o;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Deduplicated set of triples. Triples are kept sorted so iteration order,
// serialization, and every structure derived downstream are deterministic.
class TripleSet {
 public:
  TripleSet() = default;
  TripleSet(std::vector<Triple> triples, std::string label);

  const std::vector<Triple>& triples() const { return triples_; }
  const std::string& source_label() const { return source_label_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const;

  friend bool operator==(const TripleSet& a, const TripleSet& b) {
    return a.triples_ == b.triples_;
  }

 private:
  std::vector<Triple> triples_;
  std::string source_label_;
};

// Set union of the parts; identical terms unify into one node.
TripleSet merge_datasets(const std::vector<TripleSet>& parts,
                         std::string label);

using TermId = std::uint32_t;

// Immutable interning table. Ids are ranks in sorted term order, so comparing
// ids compares terms and iteration by id is canonical.
class TermTable {
 public:
  static std::shared_ptr<const TermTable> build(const TripleSet& triples);

  explicit TermTable(std::vector<Term> sorted_terms)
      : terms_(std::move(sorted_terms)) {}

  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t size() const { return terms_.size(); }

  // Id of a term known to be in the table; throws UnknownNode otherwise.
  TermId id_of(const Term& t) const;
  // -1 when absent.
  std::int64_t find(const Term& t) const;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

}  // namespace cocoe
