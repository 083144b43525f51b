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

#include "cocoe/term.hpp"

#include <algorithm>

#include "cocoe/errors.hpp"

namespace cocoe {

TripleSet::TripleSet(std::vector<Triple> triples, std::string label)
    : triples_(std::move(triples)), source_label_(std::move(label)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()),
                 triples_.end());
}

bool TripleSet::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

TripleSet merge_datasets(const std::vector<TripleSet>& parts,
                         std::string label) {
  std::vector<Triple> all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  all.reserve(total);
  for (const auto& p : parts) {
    all.insert(all.end(), p.triples().begin(), p.triples().end());
  }
  return TripleSet(std::move(all), std::move(label));
}

std::shared_ptr<const TermTable> TermTable::build(const TripleSet& triples) {
  std::vector<Term> terms;
  terms.reserve(triples.size() * 3);
  for (const auto& t : triples.triples()) {
    terms.push_back(t.s);
    terms.push_back(t.p);
    terms.push_back(t.o);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return std::make_shared<TermTable>(std::move(terms));
}

TermId TermTable::id_of(const Term& t) const {
  auto res = find(t);
  if (res < 0) throw UnknownNode(t.lexical);
  return static_cast<TermId>(res);
}

std::int64_t TermTable::find(const Term& t) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it == terms_.end() || *it != t) return -1;
  return it - terms_.begin();
}

}  // namespace cocoe
