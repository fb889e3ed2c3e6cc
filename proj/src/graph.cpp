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

#include "rdag/graph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rdag/parallel.hpp"
#include "rdag/rng.hpp"

namespace rdag {

InfluenceGraph InfluenceGraph::from_edges(
    std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("node count exceeds 32-bit node ids");
  }
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(u + 1));
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge");
  }

  InfluenceGraph g;
  g.offsets_.assign(node_count + 1, 0);
  g.targets_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    g.targets_.push_back(v);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  return g;
}

InfluenceGraph InfluenceGraph::from_csr(std::vector<std::size_t> offsets,
                                        std::vector<NodeId> targets) {
  assert(!offsets.empty() && offsets.front() == 0 &&
         offsets.back() == targets.size());
  InfluenceGraph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
#ifndef NDEBUG
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto row = g.out_neighbors(u);
    assert(std::is_sorted(row.begin(), row.end()));
    assert(std::adjacent_find(row.begin(), row.end()) == row.end());
    assert(std::find(row.begin(), row.end(), u) == row.end());
  }
#endif
  return g;
}

bool InfluenceGraph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count()) return false;
  auto row = out_neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

bool InfluenceGraph::is_label_ordered() const noexcept {
  for (NodeId u = 0; u < node_count(); ++u) {
    auto row = out_neighbors(u);
    if (!row.empty() && row.front() <= u) return false;
  }
  return true;
}

std::vector<std::pair<NodeId, NodeId>> InfluenceGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

std::vector<NodeId> InfluenceGraph::reachable_from(NodeId start) const {
  std::vector<char> seen(node_count(), 0);
  std::vector<NodeId> stack{start};
  std::vector<NodeId> out;
  seen[start] = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (NodeId v : out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void RandomDagParams::validate() const {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("n exceeds 32-bit node ids");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
}

double DegreePmf::sum() const noexcept {
  return std::accumulate(probability.begin(), probability.end(), 0.0);
}

namespace {

// Appends the sampled targets of row i (candidates i+1..n-1).
void sample_dag_row(std::uint64_t seed, std::size_t i, std::size_t n, double p,
                    double log_q, std::vector<NodeId>& out) {
  if (p <= 0.0) return;
  if (p >= 1.0) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(static_cast<NodeId>(j));
    return;
  }
  StreamRng rng(derive_key(seed, i));
  std::size_t j = i;
  for (;;) {
    // Failures before the next success, Geometric(p).
    const double skip = std::floor(std::log(rng.uniform_pos()) / log_q);
    if (skip >= static_cast<double>(n - j - 1)) break;
    j += 1 + static_cast<std::size_t>(skip);
    out.push_back(static_cast<NodeId>(j));
  }
}

constexpr std::uint64_t kRowsPerBlock = 512;

}  // namespace

InfluenceGraph generate_random_dag(const RandomDagParams& params,
                                   std::size_t threads) {
  params.validate();
  const std::size_t n = params.n;
  const double log_q = std::log1p(-params.p);

  const std::uint64_t blocks = (n + kRowsPerBlock - 1) / kRowsPerBlock;
  std::vector<std::vector<NodeId>> block_targets(blocks);
  std::vector<std::size_t> offsets(n + 1, 0);

  for_each_block(n, kRowsPerBlock, threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   auto& out = block_targets[b];
                   for (std::uint64_t i = begin; i < end; ++i) {
                     const std::size_t before = out.size();
                     sample_dag_row(params.seed, i, n, params.p, log_q, out);
                     offsets[i + 1] = out.size() - before;
                   }
                 });

  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeId> targets;
  targets.reserve(offsets.back());
  for (auto& part : block_targets) {
    targets.insert(targets.end(), part.begin(), part.end());
  }
  return InfluenceGraph::from_csr(std::move(offsets), std::move(targets));
}

DegreePmf follower_degree_pmf_exact(std::size_t n, double p) {
  RandomDagParams{n, p, 0}.validate();
  DegreePmf pmf;
  pmf.probability.assign(n, 0.0);
  if (p == 0.0) {
    pmf.probability[0] = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    std::fill(pmf.probability.begin(), pmf.probability.end(),
              1.0 / static_cast<double>(n));
    return pmf;
  }

  // Binomial(n, p) pmf in log space, then upper tails summed from the small
  // end so each tail keeps full relative precision.
  const double dn = static_cast<double>(n);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_n = std::lgamma(dn + 1.0);
  std::vector<double> binom(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double dj = static_cast<double>(j);
    binom[j] = std::exp(lg_n - std::lgamma(dj + 1.0) - std::lgamma(dn - dj + 1.0) +
                        dj * log_p + (dn - dj) * log_q);
  }
  double tail = 0.0;  // Pr[Binomial >= k+1]
  const double scale = 1.0 / (dn * p);
  for (std::size_t k = n; k-- > 0;) {
    tail += binom[k + 1];
    pmf.probability[k] = tail * scale;
  }
  return pmf;
}

void DegreeCounter::add(const InfluenceGraph& graph) {
  if (graph.node_count() != n_) {
    throw std::invalid_argument("graphs must share the same node count");
  }
  for (NodeId u = 0; u < n_; ++u) ++counts_[graph.out_degree(u)];
  total_ += n_;
}

DegreePmf DegreeCounter::pmf() const {
  if (total_ == 0) throw std::invalid_argument("no graphs counted");
  DegreePmf out;
  out.probability.resize(counts_.size());
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    out.probability[k] = static_cast<double>(counts_[k]) / static_cast<double>(total_);
  }
  return out;
}

DegreePmf follower_degree_histogram(std::span<const InfluenceGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("empty graph sequence");
  DegreeCounter counter(graphs.front().node_count());
  for (const auto& g : graphs) counter.add(g);
  return counter.pmf();
}

DegreeBucket bucket_of(std::size_t degree, const BucketScheme& scheme) {
  if (scheme.kind == BucketScheme::Kind::linear) {
    if (scheme.width == 0) throw std::invalid_argument("bucket width must be positive");
    const std::size_t lo = degree / scheme.width * scheme.width;
    return {lo, lo + scheme.width - 1};
  }
  if (degree == 0) return {0, 0};
  const std::size_t lo = std::bit_floor(degree);
  return {lo, 2 * lo - 1};
}

std::map<DegreeBucket, DegreePmf> conditional_neighbor_degree_distribution(
    const InfluenceGraph& graph, const BucketScheme& scheme) {
  std::map<DegreeBucket, std::vector<std::uint64_t>> counts;
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    const std::size_t d = graph.out_degree(u);
    if (d == 0) continue;
    auto& hist = counts[bucket_of(d, scheme)];
    for (NodeId v : graph.out_neighbors(u)) {
      const std::size_t dv = graph.out_degree(v);
      if (hist.size() <= dv) hist.resize(dv + 1, 0);
      ++hist[dv];
    }
  }

  std::map<DegreeBucket, DegreePmf> out;
  for (const auto& [bucket, hist] : counts) {
    const double total =
        static_cast<double>(std::accumulate(hist.begin(), hist.end(), std::uint64_t{0}));
    DegreePmf pmf;
    pmf.probability.reserve(hist.size());
    for (auto c : hist) pmf.probability.push_back(static_cast<double>(c) / total);
    out.emplace(bucket, std::move(pmf));
  }
  return out;
}

InfluenceGraph generate_preferential_graph(const PreferentialParams& params) {
  const std::size_t n = params.n;
  const std::size_t m = params.m;
  if (m == 0) throw std::invalid_argument("m must be at least 1");
  if (n <= m) throw std::invalid_argument("n must exceed m");
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("n exceeds 32-bit node ids");
  }

  StreamRng rng(params.seed);
  std::vector<std::pair<NodeId, NodeId>> links;  // (older, newer)
  links.reserve(m * (n - m) + m * (m - 1) / 2);
  // A node appears here once per incident link, so a uniform pick is a
  // degree-proportional pick.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * links.capacity());

  for (NodeId a = 0; a < m; ++a) {
    for (NodeId b = a + 1; b < m; ++b) {
      links.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }

  std::vector<NodeId> chosen;
  chosen.reserve(m);
  for (std::size_t v = m; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < m) {
      const NodeId t = endpoints.empty()
                           ? static_cast<NodeId>(rng.below(v))
                           : endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      }
    }
    for (NodeId t : chosen) {
      links.emplace_back(t, static_cast<NodeId>(v));
      endpoints.push_back(t);
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(params.reciprocal ? 2 * links.size() : links.size());
  for (const auto& [older, newer] : links) {
    edges.emplace_back(older, newer);
    if (params.reciprocal) edges.emplace_back(newer, older);
  }
  return InfluenceGraph::from_edges(n, std::move(edges));
}

}  // namespace rdag
