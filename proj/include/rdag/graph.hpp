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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace rdag {

using NodeId = std::uint32_t;

// Directed graph in influence orientation: an edge u -> v means "u can inform
// v". Stored as CSR with each adjacency row sorted ascending. Immutable once
// built; safe to share across threads.
//
// Nodes are 0-based here. Anything user-facing (files, CLI output) uses
// 1-based labels.
class InfluenceGraph {
 public:
  InfluenceGraph() : offsets_{0} {}

  // Builds from an edge list. Rejects self-loops, duplicate edges and
  // endpoints >= node_count with std::invalid_argument.
  static InfluenceGraph from_edges(std::size_t node_count,
                                   std::vector<std::pair<NodeId, NodeId>> edges);

  // Adopts CSR arrays that the caller guarantees to be valid (sorted rows, no
  // self-loops, no duplicates). Checked only in debug builds.
  static InfluenceGraph from_csr(std::vector<std::size_t> offsets,
                                 std::vector<NodeId> targets);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return node_count() == 0; }

  std::span<const NodeId> out_neighbors(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t out_degree(NodeId u) const noexcept {
    return offsets_[u + 1] - offsets_[u];
  }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  // True iff every edge u -> v has u < v, i.e. the identity is a topological
  // order.
  bool is_label_ordered() const noexcept;

  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Nodes reachable from `start` (including it), ascending.
  std::vector<NodeId> reachable_from(NodeId start) const;

  friend bool operator==(const InfluenceGraph&, const InfluenceGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

struct RandomDagParams {
  std::size_t n = 1;
  double p = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Probabilities indexed by degree 0..size()-1.
struct DegreePmf {
  std::vector<double> probability;

  std::size_t size() const noexcept { return probability.size(); }
  double operator[](std::size_t k) const noexcept {
    return k < probability.size() ? probability[k] : 0.0;
  }
  double sum() const noexcept;
};

// Random DAG on n nodes: each pair i < j carries the influence edge i -> j
// independently with probability p. Rows are sampled by geometric skipping
// from per-row streams keyed by (seed, i), so the result is identical for any
// `threads` (0 = hardware concurrency).
InfluenceGraph generate_random_dag(const RandomDagParams& params,
                                   std::size_t threads = 1);

// Exact out-degree law of a uniformly chosen node of a random DAG:
//   Pr[deg = k] = (1/n) sum_{i=k}^{n-1} C(i,k) p^k (1-p)^(i-k),  k = 0..n-1.
// Evaluated in O(n) through the negative-binomial identity
//   sum_{i=k}^{n-1} C(i,k) p^(k+1) (1-p)^(i-k) = Pr[Binomial(n,p) >= k+1].
DegreePmf follower_degree_pmf_exact(std::size_t n, double p);

// Out-degree pmf pooled over all nodes of all graphs. Graphs must share n.
DegreePmf follower_degree_histogram(std::span<const InfluenceGraph> graphs);

// Running version of follower_degree_histogram for large sample counts.
class DegreeCounter {
 public:
  explicit DegreeCounter(std::size_t n) : n_(n), counts_(n, 0) {}
  void add(const InfluenceGraph& graph);
  std::uint64_t nodes_seen() const noexcept { return total_; }
  DegreePmf pmf() const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct BucketScheme {
  enum class Kind { log2, linear };
  Kind kind = Kind::log2;
  std::size_t width = 1;  // linear only

  static BucketScheme log2() { return {}; }
  static BucketScheme linear(std::size_t width = 1) {
    return {Kind::linear, width};
  }
};

// Inclusive degree range [lo, hi].
struct DegreeBucket {
  std::size_t lo = 0;
  std::size_t hi = 0;
  auto operator<=>(const DegreeBucket&) const = default;
};

DegreeBucket bucket_of(std::size_t degree, const BucketScheme& scheme);

// For every bucket of followed-node out-degree, the pmf of the out-degrees of
// its followers (the heads of its influence edges). Nodes without followers
// contribute nothing; empty buckets are absent.
std::map<DegreeBucket, DegreePmf> conditional_neighbor_degree_distribution(
    const InfluenceGraph& graph, const BucketScheme& scheme = BucketScheme::log2());

struct PreferentialParams {
  std::size_t n = 0;
  std::size_t m = 1;
  std::uint64_t seed = 0;
  // Each attachment link yields influence edges in both directions. When
  // false, only older -> newer (followed -> follower) edges are produced.
  bool reciprocal = true;
};

// Barabasi-Albert style graph: a complete seed clique on m nodes, then each
// new node links to m distinct existing nodes chosen proportionally to their
// degree. Produces m*(n-m) + m*(m-1)/2 links, each stored as one or two
// influence edges depending on `reciprocal`.
InfluenceGraph generate_preferential_graph(const PreferentialParams& params);

}  // namespace rdag
