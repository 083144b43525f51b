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

#include "cocoe/ntriples.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cocoe/errors.hpp"

namespace cocoe {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct LineScanner {
  std::string_view line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && is_ws(line[pos])) ++pos;
  }
  bool eof() const { return pos >= line.size(); }
  char peek() const { return line[pos]; }
};

bool valid_bnode_label(std::string_view s) {
  if (s.empty() || s.back() == '.') return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.'))
      return false;
  }
  return true;
}

// <...> with the raw IRI kept verbatim (escapes are opaque to us).
bool scan_iri(LineScanner& sc, std::string* out) {
  if (sc.eof() || sc.peek() != '<') return false;
  std::size_t start = ++sc.pos;
  while (sc.pos < sc.line.size()) {
    char c = sc.line[sc.pos];
    if (c == '>') {
      if (sc.pos == start) return false;
      out->assign(sc.line.substr(start, sc.pos - start));
      ++sc.pos;
      return true;
    }
    if (static_cast<unsigned char>(c) <= 0x20 || c == '<') return false;
    ++sc.pos;
  }
  return false;
}

bool scan_bnode(LineScanner& sc, std::string* out) {
  if (sc.pos + 1 >= sc.line.size() || sc.line[sc.pos] != '_' ||
      sc.line[sc.pos + 1] != ':')
    return false;
  sc.pos += 2;
  std::size_t start = sc.pos;
  while (sc.pos < sc.line.size() && !is_ws(sc.line[sc.pos])) ++sc.pos;
  std::string_view label = sc.line.substr(start, sc.pos - start);
  // A label cannot end with '.', so a trailing dot is the statement
  // terminator written without a space; hand it back.
  if (label.size() > 1 && label.back() == '.') {
    label.remove_suffix(1);
    --sc.pos;
  }
  if (!valid_bnode_label(label)) return false;
  out->assign(label);
  return true;
}

// Whole literal token verbatim: quoted string plus optional @lang or ^^IRI.
bool scan_literal(LineScanner& sc, std::string* out) {
  if (sc.eof() || sc.peek() != '"') return false;
  std::size_t start = sc.pos;
  ++sc.pos;
  bool closed = false;
  while (sc.pos < sc.line.size()) {
    char c = sc.line[sc.pos];
    if (c == '\\') {
      sc.pos += 2;
      continue;
    }
    ++sc.pos;
    if (c == '"') {
      closed = true;
      break;
    }
  }
  if (!closed || sc.pos > sc.line.size()) return false;
  if (sc.pos < sc.line.size() && sc.line[sc.pos] == '@') {
    ++sc.pos;
    std::size_t tag_start = sc.pos;
    while (sc.pos < sc.line.size() &&
           (std::isalnum(static_cast<unsigned char>(sc.line[sc.pos])) ||
            sc.line[sc.pos] == '-'))
      ++sc.pos;
    if (sc.pos == tag_start) return false;
  } else if (sc.pos + 1 < sc.line.size() && sc.line[sc.pos] == '^' &&
             sc.line[sc.pos + 1] == '^') {
    sc.pos += 2;
    std::string dt;
    if (!scan_iri(sc, &dt)) return false;
  }
  out->assign(sc.line.substr(start, sc.pos - start));
  return true;
}

std::string scoped_bnode(const std::string& label, const std::string& local) {
  if (label.empty()) return "_:" + local;
  return "_:" + label + "." + local;
}

// subject predicate object '.' [comment]
bool parse_statement(std::string_view line, const std::string& label,
                     Triple* out) {
  LineScanner sc{line};
  sc.skip_ws();

  std::string tok;
  if (scan_iri(sc, &tok)) {
    out->s = Term{TermKind::kUri, tok};
  } else if (scan_bnode(sc, &tok)) {
    out->s = Term{TermKind::kUri, scoped_bnode(label, tok)};
  } else {
    return false;
  }

  sc.skip_ws();
  if (!scan_iri(sc, &tok)) return false;
  out->p = Term{TermKind::kUri, tok};

  sc.skip_ws();
  if (scan_iri(sc, &tok)) {
    out->o = Term{TermKind::kUri, tok};
  } else if (scan_bnode(sc, &tok)) {
    out->o = Term{TermKind::kUri, scoped_bnode(label, tok)};
  } else if (scan_literal(sc, &tok)) {
    out->o = Term{TermKind::kLiteral, tok};
  } else {
    return false;
  }

  sc.skip_ws();
  if (sc.eof() || sc.peek() != '.') return false;
  ++sc.pos;
  sc.skip_ws();
  return sc.eof() || sc.peek() == '#';
}

std::string excerpt_of(std::string_view line) {
  constexpr std::size_t kMax = 80;
  std::string ex(line.substr(0, kMax));
  if (line.size() > kMax) ex += "...";
  return ex;
}

}  // namespace

bool looks_gzipped(std::string_view bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string gunzip(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 16) != Z_OK)
    throw Error("zlib: inflateInit2 failed");
  std::string out;
  out.resize(std::max<std::size_t>(bytes.size() * 4, 1 << 16));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::size_t written = 0;
  int ret = Z_OK;
  do {
    if (written == out.size()) out.resize(out.size() * 2);
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
    zs.avail_out = static_cast<uInt>(out.size() - written);
    ret = inflate(&zs, Z_NO_FLUSH);
    written = out.size() - zs.avail_out;
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error("zlib: corrupt gzip stream");
    }
  } while (ret != Z_STREAM_END);
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

ParseResult parse_ntriples_text(std::string_view text,
                                const std::string& label,
                                const ParseOptions& opts) {
  ParseResult result;
  std::vector<Triple> triples;
  std::uint64_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_ws(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;

    ++result.statement_lines;
    Triple t;
    if (parse_statement(line, label, &t)) {
      triples.push_back(std::move(t));
      ++result.parsed_lines;
    } else if (opts.strict) {
      throw MalformedLine(line_no, excerpt_of(line));
    } else {
      ++result.skipped_lines;
    }
  }
  result.triples = TripleSet(std::move(triples), label);
  return result;
}

ParseResult parse_ntriples(std::istream& in, const std::string& label,
                           const ParseOptions& opts) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = std::move(buf).str();
  if (looks_gzipped(bytes)) bytes = gunzip(bytes);
  return parse_ntriples_text(bytes, label, opts);
}

ParseResult parse_ntriples_file(const std::string& path,
                                const std::string& label,
                                const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open input file");
  return parse_ntriples(in, label, opts);
}

std::string render_term(const Term& t) {
  if (t.kind == TermKind::kUri) return "<" + t.lexical + ">";
  return t.lexical;
}

void write_ntriples(const TripleSet& triples, std::ostream& out) {
  for (const auto& t : triples.triples()) {
    out << render_term(t.s) << ' ' << render_term(t.p) << ' '
        << render_term(t.o) << " .\n";
  }
}

std::string canonical_ntriples(const TripleSet& triples) {
  std::ostringstream out;
  write_ntriples(triples, out);
  return std::move(out).str();
}

}  // namespace cocoe
