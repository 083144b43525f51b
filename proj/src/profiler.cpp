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

#include "cocoe/profiler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cocoe/errors.hpp"

namespace cocoe {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kFamilyBounds[4] = {0, 4, 10, 14};  // A-D, E-J, K-N

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Heuristic heuristic_from_string(const std::string& s) {
  if (s == "H1") return Heuristic::kH1;
  if (s == "H2") return Heuristic::kH2;
  if (s == "H3") return Heuristic::kH3;
  if (s == "H4") return Heuristic::kH4;
  throw Error("unknown heuristic: " + s);
}

TaxonomySource source_from_string(const std::string& s) {
  if (s == "Tw") return TaxonomySource::kWeighted;
  if (s == "Ts") return TaxonomySource::kSimilarity;
  throw Error("unknown taxonomy source: " + s);
}

Json values_to_json(const MeasureValues& values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < kNumMeasures; ++i)
    out[measure_name(i)] = values[i];
  return out;
}

MeasureValues values_from_json(const Json& j) {
  MeasureValues values{};
  for (std::size_t i = 0; i < kNumMeasures; ++i)
    values[i] = j.at(measure_name(i)).get<double>();
  return values;
}

Json profile_to_json_obj(const DatasetProfile& p) {
  Json j;
  j["schema_version"] = 1;
  j["label"] = p.label;
  j["global_stats"] = {{"num_nodes", p.stats.num_nodes},
                       {"num_edges", p.stats.num_edges},
                       {"edge_node_ratio", p.stats.edge_node_ratio},
                       {"density", p.stats.density},
                       {"diameter", p.stats.diameter},
                       {"avg_shortest_path", p.stats.avg_shortest_path},
                       {"num_components", p.stats.num_components}};
  j["configs"] = Json::array();
  for (const auto& s : p.summaries) {
    Json c;
    c["length"] = s.config.length;
    c["radius"] = s.config.radius;
    c["heuristic"] = to_string(s.config.heuristic);
    c["taxonomy"] = to_string(s.config.taxonomy_source);
    c["samples"] = s.samples;
    c["mean"] = values_to_json(s.mean);
    c["stddev"] = values_to_json(s.stddev);
    j["configs"].push_back(std::move(c));
  }
  j["visit_distributions"] = Json::array();
  for (const auto& dist : p.visit_distributions) {
    Json d = Json::array();
    for (const auto& [rank, count, node] : dist)
      d.push_back(Json::array({rank, count, node}));
    j["visit_distributions"].push_back(std::move(d));
  }
  return j;
}

DatasetProfile profile_from_json_obj(const Json& j) {
  if (j.at("schema_version").get<int>() != 1)
    throw Error("unsupported profile schema version");
  DatasetProfile p;
  p.label = j.at("label").get<std::string>();
  const auto& g = j.at("global_stats");
  p.stats.num_nodes = g.at("num_nodes").get<std::uint64_t>();
  p.stats.num_edges = g.at("num_edges").get<std::uint64_t>();
  p.stats.edge_node_ratio = g.at("edge_node_ratio").get<double>();
  p.stats.density = g.at("density").get<double>();
  p.stats.diameter = g.at("diameter").get<double>();
  p.stats.avg_shortest_path = g.at("avg_shortest_path").get<double>();
  p.stats.num_components = g.at("num_components").get<std::uint32_t>();
  for (const auto& c : j.at("configs")) {
    ConfigSummary s;
    s.config.length = c.at("length").get<std::uint32_t>();
    s.config.radius = c.at("radius").get<std::uint32_t>();
    s.config.heuristic = heuristic_from_string(c.at("heuristic"));
    s.config.taxonomy_source = source_from_string(c.at("taxonomy"));
    s.samples = c.at("samples").get<std::uint64_t>();
    s.mean = values_from_json(c.at("mean"));
    s.stddev = values_from_json(c.at("stddev"));
    p.summaries.push_back(std::move(s));
  }
  for (const auto& d : j.at("visit_distributions")) {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> dist;
    for (const auto& e : d) {
      dist.emplace_back(e.at(0).get<std::uint64_t>(),
                        e.at(1).get<std::uint64_t>(),
                        e.at(2).get<std::string>());
    }
    p.visit_distributions.push_back(std::move(dist));
  }
  return p;
}

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
            c == '_')
               ? c
               : '_';
  }
  return out.empty() ? "dataset" : out;
}

}  // namespace

DatasetProfile aggregate(const std::vector<WalkConfig>& grid,
                         const std::vector<MeasureRecord>& records,
                         std::string label) {
  DatasetProfile profile;
  profile.label = std::move(label);
  profile.summaries.resize(grid.size());
  for (std::size_t ci = 0; ci < grid.size(); ++ci)
    profile.summaries[ci].config = grid[ci];

  std::vector<std::vector<const MeasureRecord*>> per_config(grid.size());
  for (const auto& r : records) {
    if (r.config_index >= grid.size())
      throw Error("record config index out of range");
    per_config[r.config_index].push_back(&r);
  }
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const auto& recs = per_config[ci];
    if (recs.empty()) throw IncompleteGrid(grid[ci].key());
    auto& summary = profile.summaries[ci];
    summary.samples = recs.size();
    const double n = static_cast<double>(recs.size());
    for (std::size_t m = 0; m < kNumMeasures; ++m) {
      double sum = 0.0;
      for (const auto* r : recs) sum += r->values[m];
      const double mean = sum / n;
      summary.mean[m] = mean;
      if (recs.size() > 1) {
        double sq = 0.0;
        for (const auto* r : recs) {
          const double d = r->values[m] - mean;
          sq += d * d;
        }
        summary.stddev[m] = std::sqrt(sq / (n - 1.0));
      }
    }
  }
  return profile;
}

std::string trend_symbol(Trend t) {
  switch (t) {
    case Trend::kHigher:
      return "↑";
    case Trend::kLower:
      return "↓";
    default:
      return "−";
  }
}

std::string trend_token(Trend t) {
  switch (t) {
    case Trend::kHigher:
      return "up";
    case Trend::kLower:
      return "down";
    default:
      return "flat";
  }
}

std::map<std::string, Classification> classify(
    const std::vector<DatasetProfile>& profiles, double margin) {
  if (profiles.size() < 3)
    throw Error("classification requires at least 3 dataset profiles");
  const auto& grid0 = profiles.front().summaries;
  for (const auto& p : profiles) {
    if (p.summaries.size() != grid0.size()) throw GridMismatch();
    for (std::size_t i = 0; i < grid0.size(); ++i) {
      if (!(p.summaries[i].config == grid0[i].config)) throw GridMismatch();
    }
  }

  // d beats e on a setting when mean_d > mean_e by more than the relative
  // margin; symbols per family follow the >=2-others-in->half-of-settings
  // rule.
  auto beats = [margin](double a, double b) { return a > b * (1.0 + margin); };

  std::map<std::string, Classification> result;
  for (std::size_t d = 0; d < profiles.size(); ++d) {
    Trend trends[3];
    for (int family = 0; family < 3; ++family) {
      const std::size_t m_begin = kFamilyBounds[family];
      const std::size_t m_end = kFamilyBounds[family + 1];
      std::uint64_t up_settings = 0, down_settings = 0, total = 0;
      for (std::size_t ci = 0; ci < grid0.size(); ++ci) {
        for (std::size_t m = m_begin; m < m_end; ++m) {
          ++total;
          std::size_t higher = 0, lower = 0;
          for (std::size_t e = 0; e < profiles.size(); ++e) {
            if (e == d) continue;
            const double mine = profiles[d].summaries[ci].mean[m];
            const double theirs = profiles[e].summaries[ci].mean[m];
            if (beats(mine, theirs)) ++higher;
            if (beats(theirs, mine)) ++lower;
          }
          if (higher >= 2) ++up_settings;
          if (lower >= 2) ++down_settings;
        }
      }
      const bool up = 2 * up_settings > total;
      const bool down = 2 * down_settings > total;
      if (up && !down) {
        trends[family] = Trend::kHigher;
      } else if (down && !up) {
        trends[family] = Trend::kLower;
      } else if (up && down) {
        trends[family] = up_settings > down_settings   ? Trend::kHigher
                         : down_settings > up_settings ? Trend::kLower
                                                       : Trend::kFlat;
      } else {
        trends[family] = Trend::kFlat;
      }
    }
    result[profiles[d].label] =
        Classification{trends[0], trends[1], trends[2]};
  }
  return result;
}

std::string profile_to_json(const DatasetProfile& profile) {
  return profile_to_json_obj(profile).dump(2) + "\n";
}

DatasetProfile profile_from_json(const std::string& text) {
  return profile_from_json_obj(Json::parse(text));
}

std::string classification_to_json(
    const std::map<std::string, Classification>& result, double margin) {
  Json j;
  j["schema_version"] = 1;
  j["margin"] = margin;
  j["datasets"] = Json::object();
  for (const auto& [label, c] : result) {
    j["datasets"][label] = {{"complexity", trend_token(c.complexity)},
                            {"coherence", trend_token(c.coherence)},
                            {"entropy", trend_token(c.entropy)},
                            {"symbols", trend_symbol(c.complexity) +
                                            trend_symbol(c.coherence) +
                                            trend_symbol(c.entropy)}};
  }
  return j.dump(2) + "\n";
}

ReportFiles emit_report(const std::vector<DatasetProfile>& profiles,
                        const std::map<std::string, Classification>* classes,
                        double margin, const std::string& out_dir) {
  namespace fs = std::filesystem;
  ReportFiles files;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir, "cannot create output directory");

  auto write_file = [&files](const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot write file");
    out << body;
    files.paths.push_back(path.string());
  };

  // Index first, so even an empty report is a valid skeleton.
  Json index;
  index["schema_version"] = 1;
  index["datasets"] = Json::array();
  for (const auto& p : profiles) index["datasets"].push_back(p.label);
  if (classes) {
    index["classification"] =
        Json::parse(classification_to_json(*classes, margin));
  }
  write_file(fs::path(out_dir) / "report.json", index.dump(2) + "\n");

  for (const auto& p : profiles) {
    const std::string stem = profiles.size() == 1
                                 ? std::string("profile")
                                 : "profile_" + sanitize_label(p.label);
    write_file(fs::path(out_dir) / (stem + ".json"), profile_to_json(p));

    // measures.csv: one row per config, one column per measure.
    std::string csv = "heuristic,length,radius,taxonomy,samples";
    for (std::size_t m = 0; m < kNumMeasures; ++m)
      csv += "," + measure_letter(m) + "_" + measure_name(m);
    for (std::size_t m = 0; m < kNumMeasures; ++m)
      csv += ",sd_" + measure_letter(m);
    csv += "\n";
    for (const auto& s : p.summaries) {
      csv += to_string(s.config.heuristic) + "," +
             std::to_string(s.config.length) + "," +
             std::to_string(s.config.radius) + "," +
             to_string(s.config.taxonomy_source) + "," +
             std::to_string(s.samples);
      for (std::size_t m = 0; m < kNumMeasures; ++m)
        csv += "," + format_double(s.mean[m]);
      for (std::size_t m = 0; m < kNumMeasures; ++m)
        csv += "," + format_double(s.stddev[m]);
      csv += "\n";
    }
    const std::string csv_name = profiles.size() == 1
                                     ? std::string("measures.csv")
                                     : "measures_" + sanitize_label(p.label) +
                                           ".csv";
    write_file(fs::path(out_dir) / csv_name, csv);
  }

  if (profiles.empty()) return files;

  // Plot data: x positions grouped by heuristic, then length, radius and
  // taxonomy, one mean column per dataset.
  std::vector<std::size_t> order(profiles.front().summaries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& base = profiles.front().summaries;
  std::sort(order.begin(), order.end(), [&base](std::size_t a, std::size_t b) {
    const auto& ca = base[a].config;
    const auto& cb = base[b].config;
    auto key = [](const WalkConfig& c) {
      return std::tuple(c.heuristic, c.length, c.radius, c.taxonomy_source);
    };
    return key(ca) < key(cb);
  });

  fs::create_directories(fs::path(out_dir) / "plots", ec);
  for (std::size_t m = 0; m < kNumMeasures; ++m) {
    std::string dat = "# x config";
    for (const auto& p : profiles) dat += " " + sanitize_label(p.label);
    dat += "\n";
    for (std::size_t x = 0; x < order.size(); ++x) {
      dat += std::to_string(x + 1) + " " + base[order[x]].config.key();
      for (const auto& p : profiles)
        dat += " " + format_double(p.summaries[order[x]].mean[m]);
      dat += "\n";
    }
    write_file(fs::path(out_dir) / "plots" /
                   (measure_letter(m) + "_" + measure_name(m) + ".dat"),
               dat);
  }
  return files;
}

}  // namespace cocoe
