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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cocoe/errors.hpp"
#include "cocoe/profiler.hpp"
#include "cocoe/rng.hpp"

using namespace cocoe;

namespace {

std::vector<WalkConfig> small_grid() {
  return make_grid({2, 10}, {0, 1}, {Heuristic::kH1, Heuristic::kH2},
                   {TaxonomySource::kWeighted, TaxonomySource::kSimilarity});
}

MeasureRecord record(std::size_t config, std::uint64_t walk, double value) {
  MeasureRecord r;
  r.config_index = config;
  r.walk_index = walk;
  r.values.fill(value);
  return r;
}

// A profile whose means are all `value` over the given grid.
DatasetProfile flat_profile(const std::vector<WalkConfig>& grid,
                            const std::string& label, double value) {
  std::vector<MeasureRecord> records;
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    records.push_back(record(ci, 0, value));
    records.push_back(record(ci, 1, value));
  }
  return aggregate(grid, records, label);
}

void scale_family(DatasetProfile* p, std::size_t begin, std::size_t end,
                  double factor) {
  for (auto& s : p->summaries) {
    for (std::size_t m = begin; m < end; ++m) s.mean[m] *= factor;
  }
}

void scale_all(DatasetProfile* p, double factor) {
  scale_family(p, 0, kNumMeasures, factor);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("aggregate computes mean and sample standard deviation") {
  std::vector<WalkConfig> grid{{2, 0, Heuristic::kH1,
                                TaxonomySource::kWeighted, 0}};
  auto profile = aggregate(
      grid, {record(0, 0, 2.0), record(0, 1, 4.0)}, "two");
  REQUIRE(profile.summaries.size() == 1);
  CHECK(profile.summaries[0].samples == 2);
  CHECK(profile.summaries[0].mean[0] == doctest::Approx(3.0));
  CHECK(profile.summaries[0].stddev[0] ==
        doctest::Approx(std::sqrt(2.0)));

  auto single = aggregate(grid, {record(0, 0, 7.5)}, "one");
  CHECK(single.summaries[0].mean[0] == doctest::Approx(7.5));
  CHECK(single.summaries[0].stddev[0] == doctest::Approx(0.0));
}

TEST_CASE("aggregated coherence means stay within the unit interval") {
  std::vector<WalkConfig> grid{{2, 0, Heuristic::kH1,
                                TaxonomySource::kWeighted, 0}};
  Rng rng(3);
  std::vector<MeasureRecord> records;
  for (int i = 0; i < 50; ++i) {
    MeasureRecord r;
    r.config_index = 0;
    r.walk_index = i;
    for (std::size_t m = kTaxStartEnd; m <= kCosMean; ++m)
      r.values[m] = rng.next_double();
    records.push_back(r);
  }
  auto profile = aggregate(grid, records, "coh");
  for (std::size_t m = kTaxStartEnd; m <= kCosMean; ++m) {
    CHECK(profile.summaries[0].mean[m] >= 0.0);
    CHECK(profile.summaries[0].mean[m] <= 1.0);
  }
}

TEST_CASE("aggregate rejects an incomplete grid") {
  auto grid = small_grid();
  std::vector<MeasureRecord> records{record(0, 0, 1.0)};  // one config only
  CHECK_THROWS_AS(aggregate(grid, records, "x"), IncompleteGrid);
}

TEST_CASE("a dominant entropy family classifies as up") {
  auto grid = small_grid();
  auto base = flat_profile(grid, "plain1", 1.0);
  auto base2 = flat_profile(grid, "plain2", 1.0);
  auto loud = flat_profile(grid, "loud", 1.0);
  scale_family(&loud, kEntropyWalkTop, kNumMeasures, 2.0);

  auto classes = classify({base, base2, loud}, 0.05);
  CHECK(classes.at("loud").entropy == Trend::kHigher);
  CHECK(classes.at("loud").complexity == Trend::kFlat);
  CHECK(classes.at("loud").coherence == Trend::kFlat);
  // The plain datasets trail only one other, not the two the down rule
  // needs.
  CHECK(classes.at("plain1").entropy == Trend::kFlat);
  CHECK(classes.at("plain2").entropy == Trend::kFlat);

  // With a third equal-or-higher competitor the trailing dataset does go
  // down.
  auto loud2 = flat_profile(grid, "loud2", 1.0);
  scale_family(&loud2, kEntropyWalkTop, kNumMeasures, 2.0);
  auto four = classify({base, base2, loud, loud2}, 0.05);
  CHECK(four.at("plain1").entropy == Trend::kLower);
  CHECK(four.at("loud").entropy == Trend::kHigher);
}

TEST_CASE("identical datasets classify flat everywhere") {
  auto grid = small_grid();
  auto classes = classify({flat_profile(grid, "a", 1.0),
                           flat_profile(grid, "b", 1.0),
                           flat_profile(grid, "c", 1.0)},
                          0.05);
  for (const auto& [label, c] : classes) {
    CHECK(c.complexity == Trend::kFlat);
    CHECK(c.coherence == Trend::kFlat);
    CHECK(c.entropy == Trend::kFlat);
  }
}

TEST_CASE("classification is invariant under uniform rescaling") {
  auto grid = small_grid();
  Rng rng(17);
  for (int round = 0; round < 20; ++round) {
    std::vector<DatasetProfile> profiles;
    for (int d = 0; d < 3; ++d) {
      auto p = flat_profile(grid, "d" + std::to_string(d), 1.0);
      for (auto& s : p.summaries) {
        for (auto& m : s.mean) m = rng.next_double() * 4.0;
      }
      profiles.push_back(std::move(p));
    }
    auto before = classify(profiles, 0.05);
    auto scaled = profiles;
    for (auto& p : scaled) scale_all(&p, 37.5);
    auto after = classify(scaled, 0.05);
    for (const auto& [label, c] : before) {
      CHECK(after.at(label).complexity == c.complexity);
      CHECK(after.at(label).coherence == c.coherence);
      CHECK(after.at(label).entropy == c.entropy);
    }
  }
}

TEST_CASE("shrinking the margin only moves symbols toward the arrows") {
  auto grid = small_grid();
  Rng rng(23);
  for (int round = 0; round < 30; ++round) {
    std::vector<DatasetProfile> profiles;
    for (int d = 0; d < 3; ++d) {
      auto p = flat_profile(grid, "d" + std::to_string(d), 1.0);
      for (auto& s : p.summaries) {
        for (auto& m : s.mean) m = 0.5 + rng.next_double();
      }
      profiles.push_back(std::move(p));
    }
    auto wide = classify(profiles, 0.25);
    auto tight = classify(profiles, 0.0);
    for (const auto& [label, w] : wide) {
      const auto& t = tight.at(label);
      for (auto [was, is] :
           {std::pair{w.complexity, t.complexity},
            std::pair{w.coherence, t.coherence},
            std::pair{w.entropy, t.entropy}}) {
        if (was == Trend::kHigher) CHECK(is == Trend::kHigher);
        if (was == Trend::kLower) CHECK(is == Trend::kLower);
      }
    }
  }
}

TEST_CASE("classify validates inputs") {
  auto grid = small_grid();
  auto a = flat_profile(grid, "a", 1.0);
  auto b = flat_profile(grid, "b", 1.0);
  CHECK_THROWS(classify({a, b}, 0.05));

  auto other = make_grid({5}, {0}, {Heuristic::kH1},
                         {TaxonomySource::kWeighted});
  auto c = flat_profile(other, "c", 1.0);
  CHECK_THROWS_AS(classify({a, b, c}, 0.05), GridMismatch);
}

TEST_CASE("profile json round trip is byte-stable") {
  auto grid = small_grid();
  auto profile = flat_profile(grid, "rt", 0.12345678901234567);
  profile.stats.num_nodes = 42;
  profile.stats.density = 0.0123456789;
  profile.visit_distributions.push_back({{1, 5, "urn:A"}, {2, 2, "urn:B"}});

  auto text = profile_to_json(profile);
  auto parsed = profile_from_json(text);
  CHECK(profile_to_json(parsed) == text);
  CHECK(parsed.label == "rt");
  CHECK(parsed.stats.num_nodes == 42);
  REQUIRE(parsed.visit_distributions.size() == 1);
  CHECK(std::get<2>(parsed.visit_distributions[0][0]) == "urn:A");
}

TEST_CASE("reports cover skeleton, round trip and plot layout") {
  const std::string dir = "/tmp/cocoe_profiler_test";
  std::filesystem::remove_all(dir);

  auto files = emit_report({}, nullptr, 0.05, dir);
  REQUIRE(files.paths.size() == 1);
  CHECK(read_file(files.paths[0]).find("\"datasets\": []") !=
        std::string::npos);

  auto grid = make_grid({2, 10, 20}, {0, 1},
                        {Heuristic::kH1, Heuristic::kH2, Heuristic::kH3,
                         Heuristic::kH4},
                        {TaxonomySource::kWeighted,
                         TaxonomySource::kSimilarity});
  auto profile = flat_profile(grid, "full", 1.5);
  emit_report({profile}, nullptr, 0.05, dir);

  auto reparsed = profile_from_json(read_file(dir + "/profile.json"));
  CHECK(profile_to_json(reparsed) == profile_to_json(profile));

  // 48 x positions in H1..H4 quarters.
  auto plot = read_file(dir + "/plots/A_envelope_nodes.dat");
  std::istringstream lines(plot);
  std::string line;
  std::getline(lines, line);  // header
  int x = 0;
  while (std::getline(lines, line)) {
    ++x;
    std::istringstream fields(line);
    int xpos;
    std::string key;
    fields >> xpos >> key;
    CHECK(xpos == x);
    const int quarter = (x - 1) / 12;
    const std::string expect = "h=H" + std::to_string(quarter + 1);
    CHECK(key.find(expect) != std::string::npos);
  }
  CHECK(x == 48);

  auto csv = read_file(dir + "/measures.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 49);  // header + rows
}

TEST_CASE("report failures surface the path") {
  const std::string blocker = "/tmp/cocoe_profiler_blocker";
  std::filesystem::remove_all(blocker);
  { std::ofstream out(blocker); }  // a file where a directory must go
  try {
    emit_report({}, nullptr, 0.05, blocker + "/nested");
    CHECK(false);
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(blocker) != std::string::npos);
  }
}

TEST_CASE("classification json names every dataset") {
  auto grid = small_grid();
  auto base = flat_profile(grid, "alpha", 1.0);
  auto up = flat_profile(grid, "beta", 1.0);
  scale_all(&up, 3.0);
  auto mid = flat_profile(grid, "gamma", 1.0);
  auto classes = classify({base, up, mid}, 0.05);
  auto text = classification_to_json(classes, 0.05);
  CHECK(text.find("\"alpha\"") != std::string::npos);
  CHECK(text.find("\"beta\"") != std::string::npos);
  CHECK(text.find("\"symbols\"") != std::string::npos);
  CHECK(text.find(trend_symbol(Trend::kHigher)) != std::string::npos);
}
