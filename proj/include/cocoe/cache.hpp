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

#include <optional>
#include <string>

#include "cocoe/graph.hpp"
#include "cocoe/representations.hpp"

namespace cocoe {

// On-disk cache of the scored distributional matrix and the weighted graph,
// so repeated runs over the same dataset skip the build. The binary layout
// (versioned header, sorted term table, CSR payload) is documented in the
// README; files are bit-stable across runs.
struct RepresentationCache {
  DistMatrix matrix;  // full column set with chi-squared scores
  TermGraph weighted;
};

// Content key of a dataset: hash of its canonical serialization.
std::string cache_key(const TripleSet& triples);

std::string cache_file_path(const std::string& cache_dir,
                            const std::string& key);

void save_cache(const RepresentationCache& rep, const std::string& path);

// nullopt when the file is absent or carries a different format version.
std::optional<RepresentationCache> load_cache(const std::string& path);

}  // namespace cocoe
