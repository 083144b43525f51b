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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cocoe/term.hpp"

namespace cocoe {

struct ParseOptions {
  // Lenient mode skips malformed statement lines and counts them; strict
  // mode aborts with MalformedLine.
  bool strict = false;
};

struct ParseResult {
  TripleSet triples;
  std::uint64_t statement_lines = 0;  // non-blank, non-comment lines
  std::uint64_t parsed_lines = 0;
  std::uint64_t skipped_lines = 0;
};

// Parse UTF-8 N-Triples text. Blank nodes become URIs with a label-scoped
// "_:" lexical so distinct input files never unify accidentally.
ParseResult parse_ntriples_text(std::string_view text, const std::string& label,
                                const ParseOptions& opts = {});

// Reads the whole stream; gzip input is detected by its magic bytes and
// decompressed transparently.
ParseResult parse_ntriples(std::istream& in, const std::string& label,
                           const ParseOptions& opts = {});

ParseResult parse_ntriples_file(const std::string& path,
                                const std::string& label,
                                const ParseOptions& opts = {});

// Canonical writer: sorted triples, one statement per line. parse(write(T))
// reproduces T exactly.
void write_ntriples(const TripleSet& triples, std::ostream& out);
std::string canonical_ntriples(const TripleSet& triples);

// Rendering of a single term in N-Triples syntax.
std::string render_term(const Term& t);

bool looks_gzipped(std::string_view bytes);
std::string gunzip(std::string_view bytes);

}  // namespace cocoe
