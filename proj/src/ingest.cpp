// Copyright 2026 The rdag Authors
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

#include "rdag/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rdag/error.hpp"

namespace rdag::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::follow ? "follow" : "influence";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "follow") return Orientation::follow;
  if (text == "influence") return Orientation::influence;
  throw std::invalid_argument("unknown orientation '" + std::string(text) + "'");
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::csv;
  if (text == "json") return ExportFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, end);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_f64(std::string_view s) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

// Handles "# key=value" directives; returns false for plain comments.
bool parse_directive(std::string_view line, std::string_view key, std::string_view& value) {
  line = trim(line.substr(1));
  if (line.substr(0, key.size()) != key) return false;
  line = line.substr(key.size());
  if (line.empty() || line.front() != '=') return false;
  value = trim(line.substr(1));
  return true;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, const EdgeListFormat& format,
                            std::string_view source_name) {
  const std::string source(source_name);
  std::optional<Orientation> orientation = format.orientation;
  std::optional<std::size_t> node_count = format.node_count;

  LoadReport report;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;  // (src, dst) as in file
  std::vector<std::size_t> raw_lines;
  std::string line;
  bool header_pending = format.has_header;
  while (std::getline(in, line)) {
    ++report.lines;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::string_view value;
      if (parse_directive(view, "nodes", value)) {
        auto n = parse_u64(value);
        if (!n) throw DataError(source, report.lines, "bad nodes directive");
        if (!format.node_count) node_count = *n;
      } else if (parse_directive(view, "orientation", value)) {
        Orientation declared;
        try {
          declared = parse_orientation(value);
        } catch (const std::invalid_argument& e) {
          throw DataError(source, report.lines, e.what());
        }
        if (format.orientation && *format.orientation != declared) {
          throw DataError(source, report.lines,
                          "file declares orientation '" + std::string(value) +
                              "' but '" + std::string(to_string(*format.orientation)) +
                              "' was requested");
        }
        orientation = declared;
      }
      continue;
    }
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(view, format.delimiter);
    if (fields.size() != 2) {
      throw DataError(source, report.lines, "expected 2 fields, found " +
                                                std::to_string(fields.size()));
    }
    auto src = parse_u64(fields[0]);
    auto dst = parse_u64(fields[1]);
    if (!src || !dst) throw DataError(source, report.lines, "node ids must be integers");
    raw.emplace_back(*src, *dst);
    raw_lines.push_back(report.lines);
  }
  if (in.bad()) throw IoError("read from '" + source + "' failed");

  if (!orientation) {
    throw DataError("edge list '" + source +
                    "' has no declared orientation (follow or influence)");
  }
  if (raw.empty() && !node_count) {
    throw DataError("edge list '" + source + "' is empty and no node count was given");
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  if (node_count) {
    if (*node_count > std::numeric_limits<NodeId>::max()) {
      throw DataError("node count in '" + source + "' exceeds 32-bit node ids");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto [a, b] = raw[i];
      if (a < 1 || a > *node_count || b < 1 || b > *node_count) {
        throw DataError(source, raw_lines[i],
                        "node id outside 1.." + std::to_string(*node_count));
      }
      edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
    }
  } else {
    auto& ids = report.raw_ids;
    ids.reserve(2 * raw.size());
    for (const auto& [a, b] : raw) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > std::numeric_limits<NodeId>::max()) {
      throw DataError("too many distinct nodes in '" + source + "'");
    }
    auto dense = [&ids](std::uint64_t id) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [a, b] : raw) edges.emplace_back(dense(a), dense(b));
    node_count = ids.size();
  }

  if (*orientation == Orientation::follow) {
    for (auto& [u, v] : edges) std::swap(u, v);
  }
  const auto loops = std::remove_if(edges.begin(), edges.end(),
                                    [](const auto& e) { return e.first == e.second; });
  report.self_loops = static_cast<std::size_t>(edges.end() - loops);
  edges.erase(loops, edges.end());
  std::sort(edges.begin(), edges.end());
  const auto dups = std::unique(edges.begin(), edges.end());
  report.duplicate_edges = static_cast<std::size_t>(edges.end() - dups);
  edges.erase(dups, edges.end());
  report.edges = edges.size();

  return {InfluenceGraph::from_edges(*node_count, std::move(edges)), std::move(report)};
}

LoadedGraph load_edge_list(const fs::path& path, const EdgeListFormat& format) {
  auto in = open_input(path);
  return parse_edge_list(in, format, path.string());
}

void write_edge_list(const InfluenceGraph& graph, const fs::path& path, char delimiter) {
  auto out = open_output(path);
  out << "# nodes=" << graph.node_count() << '\n' << "# orientation=influence\n";
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.out_neighbors(u)) {
      out << (u + 1) << delimiter << (v + 1) << '\n';
    }
  }
  finish(out, path);
}

void write_id_mapping(const LoadReport& report, const fs::path& path) {
  auto out = open_output(path);
  out << "node,raw_id\n";
  for (std::size_t u = 0; u < report.raw_ids.size(); ++u) {
    out << (u + 1) << ',' << report.raw_ids[u] << '\n';
  }
  finish(out, path);
}

stats::EmpiricalDistribution parse_cascade_sizes(std::istream& in,
                                                 std::string_view source_name) {
  const std::string source(source_name);
  std::vector<std::uint64_t> sizes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto v = parse_u64(view);
    if (!v || *v == 0) {
      throw DataError(source, line_no,
                      "cascade size must be a positive integer, got '" +
                          std::string(view) + "'");
    }
    sizes.push_back(*v);
  }
  if (in.bad()) throw IoError("read from '" + source + "' failed");
  if (sizes.empty()) throw DataError("no cascade sizes in '" + source + "'");
  return stats::from_samples(sizes);
}

stats::EmpiricalDistribution load_cascade_sizes(const fs::path& path) {
  auto in = open_input(path);
  return parse_cascade_sizes(in, path.string());
}

void write_cascade_sizes(std::span<const std::uint64_t> sizes, const fs::path& path) {
  auto out = open_output(path);
  for (auto s : sizes) out << s << '\n';
  finish(out, path);
}

void export_distribution(const stats::EmpiricalDistribution& dist, const fs::path& path,
                         ExportFormat format, const DistributionMetadata& metadata) {
  auto out = open_output(path);
  if (format == ExportFormat::csv) {
    out << "k,probability\n";
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      out << dist.support[i] << ',' << format_double(dist.probability[i]) << '\n';
    }
    if (dist.truncated_after) {
      out << '>' << *dist.truncated_after << ',' << format_double(dist.tail_mass) << '\n';
    }
  } else {
    json doc;
    doc["source"] = metadata.source;
    doc["params"] = metadata.params;
    doc["seed"] = metadata.seed ? json(*metadata.seed) : json(nullptr);
    doc["truncation"] = dist.truncated_after
                            ? json{{"k_max", *dist.truncated_after},
                                   {"residual", dist.tail_mass}}
                            : json(nullptr);
    doc["sample_count"] = dist.sample_count;
    doc["k"] = dist.support;
    doc["probability"] = dist.probability;
    out << doc.dump(2) << '\n';
  }
  finish(out, path);
}

namespace {

stats::EmpiricalDistribution parse_distribution_json(std::istream& in,
                                                     const std::string& source) {
  json doc;
  try {
    doc = json::parse(in);
    stats::EmpiricalDistribution dist;
    dist.support = doc.at("k").get<std::vector<std::uint64_t>>();
    dist.probability = doc.at("probability").get<std::vector<double>>();
    dist.sample_count = doc.value("sample_count", std::uint64_t{0});
    if (doc.contains("truncation") && !doc["truncation"].is_null()) {
      dist.truncated_after = doc["truncation"].at("k_max").get<std::uint64_t>();
      dist.tail_mass = doc["truncation"].at("residual").get<double>();
    }
    if (dist.support.size() != dist.probability.size()) {
      throw DataError("'" + source + "': k and probability lengths differ");
    }
    return dist;
  } catch (const json::exception& e) {
    throw DataError("'" + source + "': " + e.what());
  }
}

}  // namespace

stats::EmpiricalDistribution load_distribution(const fs::path& path) {
  const std::string source = path.string();
  auto in = open_input(path);
  std::string first;
  while (std::getline(in, first) && trim(first).empty()) {
  }
  if (trim(first).empty()) throw DataError("'" + source + "' is empty");
  in.clear();
  in.seekg(0);
  if (trim(first).front() == '{') return parse_distribution_json(in, source);

  const auto header = split(trim(first), ',');
  if (header.size() == 1 && parse_u64(header[0])) return parse_cascade_sizes(in, source);
  if (header.size() != 2 || header[0] != "k" ||
      (header[1] != "probability" && header[1] != "count" && header[1] != "value")) {
    throw DataError(source, 1,
                    "expected header k,probability | k,count | k,value or a size list");
  }
  const std::string column(header[1]);

  std::string line;
  std::getline(in, line);  // header
  std::size_t line_no = 1;
  std::vector<std::pair<std::uint64_t, double>> rows;
  stats::EmpiricalDistribution dist;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split(view, ',');
    if (fields.size() != 2) throw DataError(source, line_no, "expected 2 fields");
    auto mass = parse_f64(fields[1]);
    if (!mass || *mass < 0.0) {
      throw DataError(source, line_no, "expected a nonnegative number");
    }
    std::string_view key = fields[0];
    if (!key.empty() && key.front() == '>') key.remove_prefix(1);
    else if (key.substr(0, 2) == "k>") key.remove_prefix(2);
    if (key.size() != fields[0].size()) {
      auto cutoff = parse_u64(key);
      if (!cutoff) throw DataError(source, line_no, "bad truncation row");
      dist.truncated_after = *cutoff;
      dist.tail_mass = *mass;
      continue;
    }
    auto k = parse_u64(key);
    if (!k) throw DataError(source, line_no, "size must be a nonnegative integer");
    rows.emplace_back(*k, *mass);
  }
  if (in.bad()) throw IoError("read from '" + source + "' failed");

  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw DataError("'" + source + "': size " + std::to_string(rows[i].first) +
                      " appears twice");
    }
  }
  for (const auto& [k, mass] : rows) {
    dist.support.push_back(k);
    dist.probability.push_back(mass);
  }
  if (column != "probability") {
    const double total = dist.total_mass();
    if (!(total > 0.0)) throw DataError("'" + source + "' has no mass");
    if (column == "count") dist.sample_count = static_cast<std::uint64_t>(total);
    for (double& p : dist.probability) p /= total;
    dist.tail_mass /= total;
  }
  return dist;
}

void write_histogram_csv(const Histogram& histogram, const fs::path& path) {
  auto out = open_output(path);
  out << "k,count\n";
  const auto counts = histogram.counts();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] != 0) out << k << ',' << counts[k] << '\n';
  }
  finish(out, path);
}

}  // namespace rdag::ingest
