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

#include <string>

#include "cocoe/ntriples.hpp"
#include "cocoe/representations.hpp"
#include "cocoe/taxonomy.hpp"
#include "cocoe/term.hpp"

namespace cocoe::testing {

// The four-statement drug/disease/gene fragment used across the worked
// examples: A --r--> B, B --s--> D, B --t--> C, D --r--> B.
inline const char* kFragmentNt =
    "<urn:A> <urn:r> <urn:B> .\n"
    "<urn:B> <urn:s> <urn:D> .\n"
    "<urn:B> <urn:t> <urn:C> .\n"
    "<urn:D> <urn:r> <urn:B> .\n";

inline TripleSet fragment_triples() {
  return parse_ntriples_text(kFragmentNt, "fragment").triples;
}

inline Term uri(const std::string& s) { return Term{TermKind::kUri, s}; }

inline Triple make_triple(const std::string& s, const std::string& p,
                          const std::string& o) {
  return Triple{uri(s), uri(p), uri(o)};
}

struct Fragment {
  DirectGraph direct;
  DistMatrix matrix;       // full, scored
  TermGraph weighted;      // G_w
  NodeIndex a, b, c, d;    // row/node indices

  static Fragment build() {
    Fragment f;
    f.direct = build_direct_graph(fragment_triples());
    f.matrix = build_dist_matrix(f.direct);
    f.weighted = build_weighted_graph(f.direct, f.matrix);
    f.a = *f.matrix.row_of(uri("urn:A"));
    f.b = *f.matrix.row_of(uri("urn:B"));
    f.c = *f.matrix.row_of(uri("urn:C"));
    f.d = *f.matrix.row_of(uri("urn:D"));
    return f;
  }
};

// The golden fragment pins the clustering threshold to the minimum edge
// weight at each level, with edges at the minimum passing.
inline EpsilonPolicy example_policy() { return EpsilonPolicy::min_weight(); }

}  // namespace cocoe::testing
