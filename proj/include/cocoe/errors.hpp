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
#include <stdexcept>
#include <string>

namespace cocoe {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A statement line that does not conform to the N-Triples grammar.
class MalformedLine : public Error {
 public:
  MalformedLine(std::uint64_t line, std::string excerpt)
      : Error("malformed N-Triples statement at line " + std::to_string(line) +
              ": " + excerpt),
        line_(line),
        excerpt_(std::move(excerpt)) {}

  std::uint64_t line() const { return line_; }
  const std::string& excerpt() const { return excerpt_; }

 private:
  std::uint64_t line_;
  std::string excerpt_;
};

class EmptyMatrix : public Error {
 public:
  EmptyMatrix() : Error("distributional matrix has no columns") {}
};

class UnknownEntity : public Error {
 public:
  explicit UnknownEntity(const std::string& which)
      : Error("entity is not a matrix row: " + which) {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string& which)
      : Error("node not present: " + which) {}
};

class DegenerateGraph : public Error {
 public:
  DegenerateGraph() : Error("graph has no nodes") {}
};

class EmptyNeighborhood : public Error {
 public:
  EmptyNeighborhood() : Error("no neighbors to select from") {}
};

class NoEligibleStart : public Error {
 public:
  NoEligibleStart() : Error("all nodes are isolated; no walk start exists") {}
};

class IncompleteGrid : public Error {
 public:
  explicit IncompleteGrid(const std::string& which)
      : Error("sample stream is missing configuration: " + which) {}
};

class GridMismatch : public Error {
 public:
  GridMismatch() : Error("dataset profiles cover different config grids") {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& path, const std::string& what)
      : Error(what + ": " + path) {}
};

}  // namespace cocoe
