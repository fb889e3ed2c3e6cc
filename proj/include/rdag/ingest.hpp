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

#pragma once

// Text file formats.
//
//   Edge list      "<src><delim><dst>" per line, ids are positive integers.
//                  Lines starting with '#' are comments, except the
//                  directives "# nodes=<N>" and "# orientation=<follow|influence>".
//   Cascade sizes  one positive integer per line.
//   Distribution   CSV with header "k,probability", one row per size, plus a
//                  row ">K,<mass>" for the mass above a truncation point K;
//                  or JSON with keys source, params, seed, truncation, k,
//                  probability.
//   Histogram      CSV with header "k,count", one row per observed size.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rdag/cascade.hpp"
#include "rdag/graph.hpp"
#include "rdag/stats.hpp"

namespace rdag::ingest {

enum class Orientation {
  follow,     // "src follows dst": information flows dst -> src
  influence,  // "src informs dst"
};

std::string_view to_string(Orientation orientation);
Orientation parse_orientation(std::string_view text);

struct EdgeListFormat {
  // Field separator; ' ' accepts any run of spaces and tabs.
  char delimiter = ',';
  // Must be declared here or by an "# orientation=" directive in the file.
  std::optional<Orientation> orientation;
  bool has_header = false;
  // When known, ids are taken as 1..node_count verbatim (isolated nodes
  // survive). Otherwise ids are remapped densely in ascending raw-id order.
  std::optional<std::size_t> node_count;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t edges = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  // raw_ids[u] is the file id of node u; empty when ids were used verbatim.
  std::vector<std::uint64_t> raw_ids;
};

struct LoadedGraph {
  InfluenceGraph graph;
  LoadReport report;
};

LoadedGraph parse_edge_list(std::istream& in, const EdgeListFormat& format,
                            std::string_view source_name = "<input>");
LoadedGraph load_edge_list(const std::filesystem::path& path, const EdgeListFormat& format);

// Writes the influence edges with 1-based ids, preceded by the nodes and
// orientation directives, so the file reloads to an identical graph.
void write_edge_list(const InfluenceGraph& graph, const std::filesystem::path& path,
                     char delimiter = ',');

// Sidecar "node,raw_id" CSV for a remapped load.
void write_id_mapping(const LoadReport& report, const std::filesystem::path& path);

stats::EmpiricalDistribution parse_cascade_sizes(std::istream& in,
                                                 std::string_view source_name = "<input>");
stats::EmpiricalDistribution load_cascade_sizes(const std::filesystem::path& path);
void write_cascade_sizes(std::span<const std::uint64_t> sizes,
                         const std::filesystem::path& path);

enum class ExportFormat { csv, json };

ExportFormat parse_export_format(std::string_view text);

struct DistributionMetadata {
  std::string source = "empirical";
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

void export_distribution(const stats::EmpiricalDistribution& dist,
                         const std::filesystem::path& path, ExportFormat format,
                         const DistributionMetadata& metadata = {});

// Reads any of: distribution CSV ("k,probability"), histogram CSV
// ("k,count"), series CSV ("k,value", normalized on load), distribution JSON,
// or a cascade-size list.
stats::EmpiricalDistribution load_distribution(const std::filesystem::path& path);

void write_histogram_csv(const Histogram& histogram, const std::filesystem::path& path);

// Shortest decimal that round-trips, always with a '.' or exponent
// (1 -> "1.0").
std::string format_double(double value);

}  // namespace rdag::ingest
