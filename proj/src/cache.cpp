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

#include "cocoe/cache.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "cocoe/errors.hpp"
#include "cocoe/ntriples.hpp"
#include "cocoe/rng.hpp"

namespace cocoe {

namespace {

constexpr char kMagic[8] = {'C', 'C', 'E', 'R', 'E', 'P', '0', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

void put_bytes(std::ostream& out, const std::string& s) {
  put<std::uint64_t>(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
bool get(std::istream& in, T* v) {
  in.read(reinterpret_cast<char*>(v), sizeof(T));
  return in.good();
}

constexpr std::uint64_t kSaneLimit = 1ull << 33;  // corrupt-count guard

bool get_bytes(std::istream& in, std::string* s) {
  std::uint64_t len = 0;
  if (!get(in, &len) || len > kSaneLimit) return false;
  s->resize(len);
  in.read(s->data(), static_cast<std::streamsize>(len));
  return in.good() || len == 0;
}

std::optional<RepresentationCache> load_cache_body(std::istream& in) {
  RepresentationCache rep;
  std::uint64_t term_count = 0;
  if (!get(in, &term_count) || term_count > kSaneLimit) return std::nullopt;
  std::vector<Term> terms;
  terms.reserve(term_count);
  for (std::uint64_t i = 0; i < term_count; ++i) {
    std::uint8_t kind = 0;
    std::string lexical;
    if (!get(in, &kind) || !get_bytes(in, &lexical)) return std::nullopt;
    terms.push_back(Term{static_cast<TermKind>(kind), std::move(lexical)});
  }
  auto table = std::make_shared<TermTable>(std::move(terms));

  auto& m = rep.matrix;
  m.terms = table;
  std::uint64_t row_count = 0;
  if (!get(in, &row_count) || row_count > kSaneLimit) return std::nullopt;
  m.rows.resize(row_count);
  for (auto& r : m.rows) {
    if (!get(in, &r)) return std::nullopt;
  }
  std::uint64_t col_count = 0;
  if (!get(in, &col_count) || col_count > kSaneLimit) return std::nullopt;
  m.columns.resize(col_count);
  for (auto& c : m.columns) {
    std::uint8_t kind = 0;
    if (!get(in, &kind) || !get(in, &c.first) || !get(in, &c.second))
      return std::nullopt;
    c.kind = static_cast<ColumnKind>(kind);
  }
  m.row_ptr.resize(row_count + 1);
  for (auto& p : m.row_ptr) {
    if (!get(in, &p)) return std::nullopt;
  }
  std::uint64_t cell_count = 0;
  if (!get(in, &cell_count) || cell_count > kSaneLimit) return std::nullopt;
  m.cells.resize(cell_count);
  for (auto& c : m.cells) {
    if (!get(in, &c)) return std::nullopt;
  }
  m.col_scores.resize(col_count);
  for (auto& s : m.col_scores) {
    if (!get(in, &s)) return std::nullopt;
  }

  std::uint64_t edge_count = 0;
  if (!get(in, &edge_count) || edge_count > kSaneLimit) return std::nullopt;
  std::vector<std::tuple<NodeIndex, NodeIndex, double>> edges(edge_count);
  for (auto& [u, v, w] : edges) {
    if (!get(in, &u) || !get(in, &v) || !get(in, &w)) return std::nullopt;
  }
  rep.weighted.terms = table;
  rep.weighted.nodes = m.rows;
  rep.weighted.graph = WeightedGraph::from_edges(row_count, std::move(edges));
  return rep;
}

}  // namespace

std::string cache_key(const TripleSet& triples) {
  const std::uint64_t h = fnv1a(canonical_ntriples(triples));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_file_path(const std::string& cache_dir,
                            const std::string& key) {
  return (std::filesystem::path(cache_dir) / (key + ".rep.bin")).string();
}

void save_cache(const RepresentationCache& rep, const std::string& path) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot write cache file");
  out.write(kMagic, sizeof(kMagic));

  const auto& m = rep.matrix;
  put<std::uint64_t>(out, m.terms->size());
  for (const auto& t : m.terms->terms()) {
    put<std::uint8_t>(out, static_cast<std::uint8_t>(t.kind));
    put_bytes(out, t.lexical);
  }
  put<std::uint64_t>(out, m.rows.size());
  for (TermId r : m.rows) put<std::uint32_t>(out, r);
  put<std::uint64_t>(out, m.columns.size());
  for (const auto& c : m.columns) {
    put<std::uint8_t>(out, static_cast<std::uint8_t>(c.kind));
    put<std::uint32_t>(out, c.first);
    put<std::uint32_t>(out, c.second);
  }
  for (std::size_t r = 0; r <= m.rows.size(); ++r)
    put<std::uint64_t>(out, m.row_ptr[r]);
  put<std::uint64_t>(out, m.cells.size());
  for (std::uint32_t c : m.cells) put<std::uint32_t>(out, c);
  for (double s : m.col_scores) put<double>(out, s);

  auto edges = rep.weighted.graph.edge_list();
  put<std::uint64_t>(out, edges.size());
  for (const auto& [u, v, w] : edges) {
    put<std::uint32_t>(out, u);
    put<std::uint32_t>(out, v);
    put<double>(out, w);
  }
  if (!out) throw IoError(path, "cache write failed");
}

std::optional<RepresentationCache> load_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    return std::nullopt;
  try {
    return load_cache_body(in);
  } catch (const std::bad_alloc&) {
    return std::nullopt;  // corrupt counts; fall back to a rebuild
  } catch (const std::length_error&) {
    return std::nullopt;
  }
}

}  // namespace cocoe
