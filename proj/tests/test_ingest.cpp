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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rdag/analytic.hpp"
#include "rdag/error.hpp"
#include "rdag/ingest.hpp"
#include "rdag/rng.hpp"

using namespace rdag;
using namespace rdag::ingest;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::path(RDAG_TEST_TMP) / "ingest";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

LoadedGraph parse(const std::string& text, EdgeListFormat format) {
  std::istringstream in(text);
  return parse_edge_list(in, format, "test");
}

EdgeListFormat influence() {
  EdgeListFormat f;
  f.orientation = Orientation::influence;
  return f;
}

}  // namespace

TEST_CASE("edge list: empty input") {
  CHECK_THROWS_AS(parse("", influence()), DataError);
  auto f = influence();
  f.node_count = 4;
  auto loaded = parse("", f);
  CHECK(loaded.graph.node_count() == 4);
  CHECK(loaded.graph.edge_count() == 0);
}

TEST_CASE("edge list: both directions are kept") {
  auto loaded = parse("1,2\n2,1\n", influence());
  CHECK(loaded.graph.node_count() == 2);
  CHECK(loaded.graph.edge_count() == 2);
}

TEST_CASE("edge list: duplicates and self-loops are reported") {
  auto loaded = parse("1,2\n1,2\n3,3\n2,3\n", influence());
  CHECK(loaded.graph.edge_count() == 2);
  CHECK(loaded.report.duplicate_edges == 1);
  CHECK(loaded.report.self_loops == 1);
  CHECK(loaded.report.lines == 4);
}

TEST_CASE("edge list: malformed lines carry their line number") {
  try {
    parse("1,2\n\n2,x\n", influence());
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("1,2,3\n", influence()), DataError);
  CHECK_THROWS_AS(parse("1,2\n", EdgeListFormat{}), DataError);
}

TEST_CASE("edge list: follow orientation reverses edges") {
  // Sparse 64-bit ids as found in real dumps.
  const std::string follow = "900000000001,17\n17,5\n5,900000000001\n";
  const std::string reversed = "17,900000000001\n5,17\n900000000001,5\n";
  EdgeListFormat f;
  f.orientation = Orientation::follow;
  auto a = parse(follow, f);
  auto b = parse(reversed, influence());
  CHECK(a.graph == b.graph);
  CHECK(a.report.raw_ids == std::vector<std::uint64_t>{5, 17, 900000000001});
  // "17 follows 5": 5 informs 17.
  CHECK(a.graph.has_edge(0, 1));
}

TEST_CASE("edge list: directives, headers and whitespace") {
  auto loaded = parse("# nodes=6\n# orientation=follow\n2 1\n3\t1\n", [] {
    EdgeListFormat f;
    f.delimiter = ' ';
    return f;
  }());
  CHECK(loaded.graph.node_count() == 6);
  CHECK(loaded.graph.has_edge(0, 1));
  CHECK(loaded.graph.has_edge(0, 2));

  auto header = influence();
  header.has_header = true;
  CHECK(parse("src,dst\n1,2\n", header).graph.edge_count() == 1);

  CHECK_THROWS_AS(parse("# orientation=follow\n1,2\n", influence()), DataError);
  auto fixed = influence();
  fixed.node_count = 3;
  CHECK_THROWS_AS(parse("1,4\n", fixed), DataError);
}

TEST_CASE("edge list: write and reload round-trips") {
  auto g = generate_random_dag({40, 0.05, 12});
  const auto path = scratch("dag.csv");
  write_edge_list(g, path);
  auto loaded = load_edge_list(path, EdgeListFormat{});
  CHECK(loaded.graph == g);
  CHECK(loaded.report.raw_ids.empty());

  auto remapped = parse("10,30\n30,20\n", influence());
  const auto map_path = scratch("ids.csv");
  write_id_mapping(remapped.report, map_path);
  CHECK(slurp(map_path) == "node,raw_id\n1,10\n2,20\n3,30\n");
}

TEST_CASE("cascade sizes") {
  std::istringstream small("1\n1\n2\n");
  auto d = parse_cascade_sizes(small);
  CHECK(d.support == std::vector<std::uint64_t>{1, 2});
  CHECK(d.probability[0] == doctest::Approx(2.0 / 3));
  CHECK(d.probability[1] == doctest::Approx(1.0 / 3));
  CHECK(d.sample_count == 3);

  std::istringstream single("7\n");
  auto point = parse_cascade_sizes(single);
  CHECK(point.support == std::vector<std::uint64_t>{7});
  CHECK(point.probability == std::vector<double>{1.0});

  for (const char* bad : {"1\n0\n", "1\n-2\n", "3\n1.5\n", "abc\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(parse_cascade_sizes(in), DataError);
  }
  std::istringstream zero("4\n2\n0\n");
  try {
    parse_cascade_sizes(zero);
  } catch (const DataError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("cascade sizes drawn from the exact law survive a file round trip") {
  auto exact = analytic::exact_snk(100, 100, 0.99);
  std::vector<double> cdf;
  double acc = 0.0;
  for (double v : exact.values) cdf.push_back(acc += v);
  StreamRng rng(42);
  std::vector<std::uint64_t> sizes(1'000'000);
  for (auto& s : sizes) {
    const double u = rng.uniform() * acc;
    s = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
    s = std::min<std::uint64_t>(s, 100);
  }
  const auto path = scratch("sizes.txt");
  write_cascade_sizes(sizes, path);
  auto loaded = load_cascade_sizes(path);
  CHECK(loaded.sample_count == sizes.size());
  CHECK(stats::total_variation(loaded, exact.to_empirical()) <= 0.02);
}

TEST_CASE("distribution export") {
  stats::EmpiricalDistribution point;
  point.support = {1};
  point.probability = {1.0};
  const auto csv = scratch("point.csv");
  export_distribution(point, csv, ExportFormat::csv);
  CHECK(slurp(csv) == "k,probability\n1,1.0\n");

  auto exact = analytic::exact_snk(100, 100, 0.99);
  const auto full = scratch("snk.csv");
  export_distribution(exact.to_empirical(), full, ExportFormat::csv);
  auto reread = load_distribution(full);
  CHECK(std::abs(reread.total_mass() - 1.0) <= 1e-9);

  auto cut = analytic::exact_snk(100, 30, 0.99).to_empirical();
  for (auto format : {ExportFormat::csv, ExportFormat::json}) {
    const auto path = scratch(format == ExportFormat::csv ? "cut.csv" : "cut.json");
    DistributionMetadata meta;
    meta.source = "exact";
    meta.params = {{"n", 100}, {"beta", 0.99}};
    meta.seed = 5;
    export_distribution(cut, path, format, meta);
    auto back = load_distribution(path);
    REQUIRE(back.support == cut.support);
    for (std::size_t i = 0; i < cut.probability.size(); ++i) {
      CHECK(std::abs(back.probability[i] - cut.probability[i]) <= 1e-12);
    }
    CHECK(back.truncated_after == cut.truncated_after);
    CHECK(std::abs(back.tail_mass - cut.tail_mass) <= 1e-12);
  }
  const auto json_text = slurp(scratch("cut.json"));
  for (const char* key : {"\"source\"", "\"params\"", "\"seed\"", "\"truncation\""}) {
    CHECK(json_text.find(key) != std::string::npos);
  }
  CHECK(slurp(scratch("cut.csv")).find("\n>30,") != std::string::npos);
}

TEST_CASE("histogram CSV loads as a normalized distribution") {
  Histogram h;
  h.add(1, 3);
  h.add(4, 1);
  const auto path = scratch("hist.csv");
  write_histogram_csv(h, path);
  CHECK(slurp(path) == "k,count\n1,3\n4,1\n");
  auto d = load_distribution(path);
  CHECK(d.sample_count == 4);
  CHECK(d.at(1) == 0.75);
  CHECK(d.at(4) == 0.25);
}

TEST_CASE("I/O failures name the path") {
  try {
    write_cascade_sizes(std::vector<std::uint64_t>{1}, "/nonexistent-dir/x.txt");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.txt") != std::string::npos);
  }
  CHECK_THROWS_AS(load_cascade_sizes("/nonexistent-dir/y.txt"), IoError);
}

TEST_CASE("format_double") {
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(0.25) == "0.25");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}
