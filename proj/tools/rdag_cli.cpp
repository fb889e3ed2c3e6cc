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

// rdag: random-DAG cascade toolkit.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdag/analytic.hpp"
#include "rdag/cascade.hpp"
#include "rdag/error.hpp"
#include "rdag/graph.hpp"
#include "rdag/ingest.hpp"
#include "rdag/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rdag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Options shared by every subcommand; only the relevant ones get registered.
struct Options {
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::optional<std::size_t> k_max;
  std::uint64_t k_min = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t m = 3;
  std::string mode = "independent";
  bool variant = false;
  bool conditional = false;
  bool laurent = false;
  bool one_way = false;
  std::string method = "mle";
  std::string bucketing = "log2";
  std::size_t width = 1;
  std::size_t threads = 0;
  std::string out;
  std::string format = "csv";
  std::string graph;
  std::string orientation;
  std::string delimiter = ",";
  std::string input;
  std::string input_a;
  std::string input_b;
};

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void write_manifest(const std::string& command, const std::string& out, const json& params,
                    std::optional<std::uint64_t> seed) {
  json doc;
  doc["command"] = command;
  doc["parameters"] = params;
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  doc["tool_version"] = RDAG_VERSION;
  doc["outputs"] = json::array({fs::path(out).filename().string()});
  const auto path = manifest_path(out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << doc.dump(2) << '\n';
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

ingest::ExportFormat export_format(const Options& o) {
  return ingest::parse_export_format(o.format);
}

char parse_delimiter(const std::string& text) {
  if (text == "space" || text == "tab" || text == "whitespace" || text == " " ||
      text == "\t") {
    return ' ';
  }
  if (text.size() != 1) throw UsageError("--delimiter must be one character, 'space' or 'tab'");
  return text[0];
}

ingest::LoadedGraph load_graph(const Options& o) {
  ingest::EdgeListFormat format;
  format.delimiter = parse_delimiter(o.delimiter);
  if (!o.orientation.empty()) format.orientation = ingest::parse_orientation(o.orientation);
  auto loaded = ingest::load_edge_list(o.graph, format);
  std::cerr << "loaded " << loaded.graph.node_count() << " nodes, " << loaded.graph.edge_count()
            << " edges";
  if (loaded.report.duplicate_edges) {
    std::cerr << " (" << loaded.report.duplicate_edges << " duplicates dropped)";
  }
  if (loaded.report.self_loops) {
    std::cerr << " (" << loaded.report.self_loops << " self-loops dropped)";
  }
  std::cerr << '\n';
  return loaded;
}

json graph_params(const Options& o) {
  return {{"graph", o.graph}, {"orientation", o.orientation}, {"delimiter", o.delimiter}};
}

template <typename T>
const T& need(const std::optional<T>& value, const char* flag) {
  if (!value) throw UsageError(std::string(flag) + " is required");
  return *value;
}

void require_out(const Options& o) {
  if (o.out.empty()) throw UsageError("--out is required");
}

// --- subcommands -----------------------------------------------------------

void cmd_gen_dag(const Options& o) {
  require_out(o);
  RandomDagParams params{need(o.n, "--n"), need(o.p, "--p"), o.seed};
  auto graph = generate_random_dag(params, o.threads);
  ingest::write_edge_list(graph, o.out);
  write_manifest("gen-dag", o.out, {{"n", params.n}, {"p", params.p}}, o.seed);
}

void cmd_gen_pa(const Options& o) {
  require_out(o);
  PreferentialParams params{need(o.n, "--n"), o.m, o.seed, !o.one_way};
  auto graph = generate_preferential_graph(params);
  ingest::write_edge_list(graph, o.out);
  write_manifest("gen-pa", o.out, {{"n", params.n}, {"m", params.m}, {"reciprocal", params.reciprocal}},
                 o.seed);
}

void cmd_simulate(const Options& o) {
  require_out(o);
  const bool have_graph = !o.graph.empty();
  const bool have_dag = o.n || o.p;
  if (have_graph == have_dag) {
    throw UsageError("give exactly one of --graph or --n/--p");
  }
  CascadeParams cascade;
  cascade.alpha = need(o.alpha, "--alpha");
  cascade.mode = parse_passing_mode(o.mode);
  cascade.seed = o.seed;

  json params = {{"alpha", cascade.alpha}, {"mode", o.mode}, {"trials", o.trials}};
  Histogram histogram;
  if (have_graph) {
    auto loaded = load_graph(o);
    params.update(graph_params(o));
    params["ensemble"] = "fixed";
    histogram = batch_on_fixed_graph(loaded.graph, cascade, o.trials, o.threads);
  } else {
    RandomDagParams dag{need(o.n, "--n"), need(o.p, "--p"), o.seed};
    params["n"] = dag.n;
    params["p"] = dag.p;
    params["ensemble"] = "annealed";
    if (cascade.mode == PassingMode::independent) {
      params["beta"] = analytic::beta_from_edge_passing(dag.p, cascade.alpha);
    } else {
      params["beta"] = 1.0 - dag.p;
    }
    histogram = sample_annealed_size_distribution(dag, cascade, o.trials, o.threads);
  }
  if (export_format(o) == ingest::ExportFormat::csv) {
    ingest::write_histogram_csv(histogram, o.out);
  } else {
    ingest::DistributionMetadata meta{"empirical", params, o.seed};
    ingest::export_distribution(stats::from_counts(histogram.counts()), o.out,
                                ingest::ExportFormat::json, meta);
  }
  write_manifest("simulate", o.out, params, o.seed);
}

void cmd_exact(const Options& o) {
  require_out(o);
  const std::size_t n = need(o.n, "--n");
  const std::size_t k_max = o.k_max.value_or(n);
  json params = {{"n", n}, {"k_max", k_max}, {"variant", o.variant}};
  if (o.p) params["p"] = *o.p;
  if (o.alpha) params["alpha"] = *o.alpha;

  analytic::SizeDistribution dist;
  double beta = 0.0;
  if (o.variant) {
    const double alpha = need(o.alpha, "--alpha");
    if (o.beta.has_value() == o.p.has_value()) {
      throw UsageError("the variant needs --alpha and exactly one of --beta or --p");
    }
    beta = o.beta ? *o.beta : 1.0 - *o.p;
    params["conditional"] = o.conditional;
    dist = analytic::variant_exact_snk(n, k_max, beta, alpha, o.conditional);
  } else {
    if (o.conditional) throw UsageError("--conditional only applies with --variant");
    const bool have_pa = o.p || o.alpha;
    if (o.beta.has_value() == have_pa) {
      throw UsageError("give either --beta or both --p and --alpha");
    }
    beta = o.beta ? *o.beta
                  : analytic::beta_from_edge_passing(need(o.p, "--p"), need(o.alpha, "--alpha"));
    dist = analytic::exact_snk(n, k_max, beta);
  }
  params["beta"] = beta;
  ingest::DistributionMetadata meta{std::string(analytic::to_string(dist.source)), params, {}};
  ingest::export_distribution(dist.to_empirical(), o.out, export_format(o), meta);
  write_manifest("exact", o.out, params, std::nullopt);
}

void cmd_asymptotic(const Options& o) {
  require_out(o);
  if (o.beta.has_value() == o.epsilon.has_value()) {
    throw UsageError("give exactly one of --beta or --epsilon");
  }
  const std::size_t k_max = need(o.k_max, "--k-max");
  if (k_max == 0) throw UsageError("--k-max must be at least 1");
  json params = {{"k_max", k_max}, {"laurent", o.laurent}};
  if (o.beta) params["beta"] = *o.beta;
  if (o.epsilon) params["epsilon"] = *o.epsilon;
  const double eps = o.epsilon ? *o.epsilon : 1.0 - *o.beta;

  std::vector<std::uint64_t> ks;
  std::vector<double> values;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    ks.push_back(k);
    if (o.laurent) {
      values.push_back(analytic::laurent_approx(eps, k));
    } else if (o.epsilon) {
      values.push_back(analytic::asymptotic_ak_eps(eps, k));
    } else {
      values.push_back(analytic::asymptotic_ak(*o.beta, k));
    }
  }

  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw IoError("cannot open '" + o.out + "' for writing");
  if (export_format(o) == ingest::ExportFormat::csv) {
    file << "k,value\n";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      file << ks[i] << ',' << ingest::format_double(values[i]) << '\n';
    }
  } else {
    json doc = {{"source", o.laurent ? "laurent" : "asymptotic"},
                {"params", params},
                {"k", ks},
                {"value", values}};
    file << doc.dump(2) << '\n';
  }
  file.close();
  if (!file) throw IoError("failed writing '" + o.out + "'");
  write_manifest("asymptotic", o.out, params, std::nullopt);
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << doc.dump(2) << '\n';
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

void cmd_fit(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  auto dist = ingest::load_distribution(o.input);
  std::uint64_t k_max = 0;
  if (o.k_max) {
    k_max = *o.k_max;
  } else {
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      if (dist.probability[i] > 0.0) k_max = std::max(k_max, dist.support[i]);
    }
  }
  const auto method = stats::parse_fit_method(o.method);
  auto fit = stats::fit_power_law_exponent(dist, o.k_min, k_max, method);
  json report = {{"exponent", fit.exponent},
                 {"k_min", fit.k_min},
                 {"k_max", fit.k_max},
                 {"method", stats::to_string(fit.method)},
                 {"ks_goodness", fit.goodness},
                 {"points_used", fit.points_used},
                 {"zero_points_excluded", fit.zero_points_excluded}};
  if (o.out.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  write_json_file(o.out, report);
  write_manifest("fit", o.out,
                 {{"input", o.input}, {"k_min", o.k_min}, {"k_max", k_max}, {"method", o.method}},
                 std::nullopt);
}

void cmd_ks(const Options& o) {
  if (o.input_a.empty() || o.input_b.empty()) {
    throw UsageError("--input-a and --input-b are required");
  }
  auto a = ingest::load_distribution(o.input_a);
  auto b = ingest::load_distribution(o.input_b);
  const double ks = stats::ks_statistic(a, b);
  std::cout << ingest::format_double(ks) << '\n';
  if (o.out.empty()) return;
  json params = {{"input_a", o.input_a}, {"input_b", o.input_b}};
  write_json_file(o.out, {{"ks", ks}, {"input_a", o.input_a}, {"input_b", o.input_b}});
  write_manifest("ks", o.out, params, std::nullopt);
}

void cmd_neighbor_deg(const Options& o) {
  require_out(o);
  if (o.graph.empty()) throw UsageError("--graph is required");
  BucketScheme scheme;
  if (o.bucketing == "log2") {
    scheme = BucketScheme::log2();
  } else if (o.bucketing == "linear") {
    if (o.width == 0) throw UsageError("--width must be positive");
    scheme = BucketScheme::linear(o.width);
  } else {
    throw UsageError("--bucketing must be log2 or linear");
  }
  auto loaded = load_graph(o);
  auto buckets = conditional_neighbor_degree_distribution(loaded.graph, scheme);

  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw IoError("cannot open '" + o.out + "' for writing");
  if (export_format(o) == ingest::ExportFormat::csv) {
    file << "bucket_lo,bucket_hi,degree,probability\n";
    for (const auto& [bucket, pmf] : buckets) {
      for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] == 0.0) continue;
        file << bucket.lo << ',' << bucket.hi << ',' << k << ','
             << ingest::format_double(pmf[k]) << '\n';
      }
    }
  } else {
    json doc = json::array();
    for (const auto& [bucket, pmf] : buckets) {
      json degrees = json::array();
      json probs = json::array();
      for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] == 0.0) continue;
        degrees.push_back(k);
        probs.push_back(pmf[k]);
      }
      doc.push_back({{"bucket_lo", bucket.lo},
                     {"bucket_hi", bucket.hi},
                     {"degree", degrees},
                     {"probability", probs}});
    }
    file << doc.dump(2) << '\n';
  }
  file.close();
  if (!file) throw IoError("failed writing '" + o.out + "'");
  json params = graph_params(o);
  params["bucketing"] = o.bucketing;
  if (o.bucketing == "linear") params["width"] = o.width;
  write_manifest("neighbor-deg", o.out, params, std::nullopt);
}

void cmd_degree_pmf(const Options& o) {
  require_out(o);
  const std::size_t n = need(o.n, "--n");
  const double p = need(o.p, "--p");
  auto pmf = follower_degree_pmf_exact(n, p);
  stats::EmpiricalDistribution dist;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    dist.support.push_back(k);
    dist.probability.push_back(pmf[k]);
  }
  json params = {{"n", n}, {"p", p}};
  ingest::export_distribution(dist, o.out, export_format(o), {"degree_pmf", params, {}});
  write_manifest("degree-pmf", o.out, params, std::nullopt);
}

// --- flag registration -----------------------------------------------------

void add_n(CLI::App* c, Options& o, const char* what = "number of nodes") {
  c->add_option("--n", o.n, what);
}
void add_p(CLI::App* c, Options& o) {
  c->add_option("--p", o.p, "edge probability of the random DAG, in [0,1]");
}
void add_alpha(CLI::App* c, Options& o) {
  c->add_option("--alpha", o.alpha, "per-contact passing probability, in [0,1]");
}
void add_seed(CLI::App* c, Options& o) {
  c->add_option("--seed", o.seed, "master seed (unsigned 64-bit)")->capture_default_str();
}
void add_threads(CLI::App* c, Options& o) {
  c->add_option("--threads", o.threads, "worker threads; 0 = all cores (results do not depend on it)")
      ->capture_default_str();
}
void add_out(CLI::App* c, Options& o, const char* what) { c->add_option("--out", o.out, what); }
void add_format(CLI::App* c, Options& o) {
  c->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}
void add_graph(CLI::App* c, Options& o) {
  c->add_option("--graph", o.graph, "edge-list file (one 'src,dst' pair per line)");
  c->add_option("--orientation", o.orientation,
                "edge meaning: influence (src informs dst) or follow (src follows dst); "
                "default: taken from the file's '# orientation=' line")
      ->check(CLI::IsMember({"influence", "follow"}));
  c->add_option("--delimiter", o.delimiter, "field separator: one character, 'space' or 'tab'")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-DAG information cascades: generation, simulation, exact and "
               "asymptotic size laws, fitting."};
  app.set_version_flag("--version", std::string("rdag ") + RDAG_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* gen_dag = app.add_subcommand("gen-dag", "Write a random DAG (edge i->j, i<j, w.p. p)");
  add_n(gen_dag, o);
  add_p(gen_dag, o);
  add_seed(gen_dag, o);
  add_threads(gen_dag, o);
  add_out(gen_dag, o, "edge-list output path (influence orientation, 1-based ids)");

  auto* gen_pa = app.add_subcommand("gen-pa", "Write a preferential-attachment graph");
  add_n(gen_pa, o);
  gen_pa->add_option("--m", o.m, "links added per new node")->capture_default_str();
  gen_pa->add_flag("--one-way", o.one_way, "keep only older->newer edges instead of both directions");
  add_seed(gen_pa, o);
  add_out(gen_pa, o, "edge-list output path");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo cascade sizes on random DAGs (--n/--p) or a fixed graph (--graph)");
  add_n(simulate, o, "number of nodes of each random DAG");
  add_p(simulate, o);
  add_graph(simulate, o);
  add_alpha(simulate, o);
  simulate->add_option("--mode", o.mode,
                       "independent: one coin per edge, size = informed nodes; "
                       "dependent: one coin per node, size = spreaders")
      ->check(CLI::IsMember({"independent", "dependent"}))
      ->capture_default_str();
  simulate->add_option("--trials", o.trials, "number of cascades")->capture_default_str();
  add_seed(simulate, o);
  add_threads(simulate, o);
  add_out(simulate, o, "histogram output path (k,count)");
  add_format(simulate, o);

  auto* exact = app.add_subcommand("exact", "Exact size distribution S(n,k) from the recurrence");
  add_n(exact, o);
  exact->add_option("--beta", o.beta, "probability that one pair fails to pass, in [0,1]");
  add_p(exact, o);
  add_alpha(exact, o);
  exact->add_option("--k-max", o.k_max, "largest size to report (default: n)");
  exact->add_flag("--variant", o.variant,
                  "spreader-count variant (one decision per node); beta defaults to 1-p");
  exact->add_flag("--conditional", o.conditional,
                  "with --variant: condition on the start node spreading");
  add_out(exact, o, "distribution output path");
  add_format(exact, o);

  auto* asymptotic = app.add_subcommand("asymptotic", "Limit A_k = 1/(1-beta^k) of n S(n,k)");
  asymptotic->add_option("--beta", o.beta, "pair failure probability, in [0,1)");
  asymptotic->add_option("--epsilon", o.epsilon, "1 - beta, in (0,1]");
  asymptotic->add_option("--k-max", o.k_max, "series runs over k = 1..k-max");
  asymptotic->add_flag("--laurent", o.laurent, "emit the two-term expansion 1/(k eps) + (k-1)/(2k)");
  add_out(asymptotic, o, "series output path (k,value)");
  add_format(asymptotic, o);

  auto* fit = app.add_subcommand("fit", "Fit a power-law exponent to a size distribution");
  fit->add_option("--input", o.input, "distribution file (CSV, JSON or one size per line)");
  fit->add_option("--k-min", o.k_min, "smallest size in the fit")->capture_default_str();
  fit->add_option("--k-max", o.k_max, "largest size in the fit (default: largest observed)");
  fit->add_option("--method", o.method, "log-log regression or discrete maximum likelihood")
      ->check(CLI::IsMember({"regression", "mle"}))
      ->capture_default_str();
  add_out(fit, o, "JSON report path (default: stdout)");

  auto* ks = app.add_subcommand("ks", "Kolmogorov-Smirnov distance between two distributions");
  ks->add_option("--input-a", o.input_a, "first distribution file");
  ks->add_option("--input-b", o.input_b, "second distribution file");
  add_out(ks, o, "optional JSON report path");

  auto* neighbor = app.add_subcommand(
      "neighbor-deg", "Follower out-degree distribution grouped by followed-node out-degree");
  add_graph(neighbor, o);
  neighbor->add_option("--bucketing", o.bucketing, "bucket rule for the followed node's degree")
      ->check(CLI::IsMember({"log2", "linear"}))
      ->capture_default_str();
  neighbor->add_option("--width", o.width, "bucket width for linear bucketing")
      ->capture_default_str();
  add_out(neighbor, o, "output path (bucket_lo,bucket_hi,degree,probability)");
  add_format(neighbor, o);

  auto* degree = app.add_subcommand("degree-pmf", "Exact out-degree pmf of a random DAG node");
  add_n(degree, o);
  add_p(degree, o);
  add_out(degree, o, "output path (k,probability)");
  add_format(degree, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_dag) cmd_gen_dag(o);
    else if (*gen_pa) cmd_gen_pa(o);
    else if (*simulate) cmd_simulate(o);
    else if (*exact) cmd_exact(o);
    else if (*asymptotic) cmd_asymptotic(o);
    else if (*fit) cmd_fit(o);
    else if (*ks) cmd_ks(o);
    else if (*neighbor) cmd_neighbor_deg(o);
    else if (*degree) cmd_degree_pmf(o);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
