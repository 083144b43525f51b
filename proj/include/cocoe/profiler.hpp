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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cocoe/measures.hpp"
#include "cocoe/walker.hpp"

namespace cocoe {

struct ConfigSummary {
  WalkConfig config;
  std::uint64_t samples = 0;
  MeasureValues mean{};
  MeasureValues stddev{};  // sample standard deviation, 0 for n = 1
};

struct DatasetProfile {
  std::string label;
  GlobalStats stats;
  std::vector<ConfigSummary> summaries;  // grid order
  // Per config, (rank, count, node label) most visited first.
  std::vector<std::vector<std::tuple<std::uint64_t, std::uint64_t,
                                     std::string>>> visit_distributions;
};

// Mean and standard deviation per measure per config. The record stream must
// cover every grid config (IncompleteGrid otherwise).
DatasetProfile aggregate(const std::vector<WalkConfig>& grid,
                         const std::vector<MeasureRecord>& records,
                         std::string label);

enum class Trend : std::uint8_t { kHigher, kLower, kFlat };

std::string trend_symbol(Trend t);   // UTF-8 arrow / dash
std::string trend_token(Trend t);    // "up" / "down" / "flat"

struct Classification {
  Trend complexity = Trend::kFlat;
  Trend coherence = Trend::kFlat;
  Trend entropy = Trend::kFlat;
};

// Relative standing of each dataset per measure family: a dataset scores
// higher against another on one (config, measure) setting when its mean
// exceeds the other's by more than the relative margin; a family trends up
// when the dataset beats at least two others in more than half of all
// settings, symmetrically down, flat otherwise. Requires >= 3 profiles over
// identical grids.
std::map<std::string, Classification> classify(
    const std::vector<DatasetProfile>& profiles, double margin = 0.05);

// JSON encodings (nlohmann-compatible strings) used by reports and the CLI.
std::string profile_to_json(const DatasetProfile& profile);
DatasetProfile profile_from_json(const std::string& text);

std::string classification_to_json(
    const std::map<std::string, Classification>& result, double margin);

struct ReportFiles {
  std::vector<std::string> paths;
};

// profile.json per dataset, measures.csv, and one plots/<measure>.dat per
// measure with the configs of the grid as x positions grouped by heuristic.
ReportFiles emit_report(const std::vector<DatasetProfile>& profiles,
                        const std::map<std::string, Classification>* classes,
                        double margin, const std::string& out_dir);

}  // namespace cocoe
