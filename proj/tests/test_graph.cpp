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
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rdag/graph.hpp"
#include "rdag/stats.hpp"

using namespace rdag;

TEST_CASE("random DAG extremes") {
  auto empty = generate_random_dag({5, 0.0, 1});
  CHECK(empty.node_count() == 5);
  CHECK(empty.edge_count() == 0);

  auto full = generate_random_dag({5, 1.0, 1});
  CHECK(full.edge_count() == 10);
  for (NodeId i = 0; i < 5; ++i) {
    for (NodeId j = 0; j < 5; ++j) CHECK(full.has_edge(i, j) == (i < j));
  }
}

TEST_CASE("random DAG rejects bad parameters") {
  CHECK_THROWS_AS(generate_random_dag({0, 0.5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_random_dag({5, -0.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_random_dag({5, 1.5, 1}), std::invalid_argument);
}

TEST_CASE("random DAG edge count concentrates on Binomial(4950, 0.1)") {
  const int seeds = 1000;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    auto g = generate_random_dag({100, 0.1, static_cast<std::uint64_t>(s)});
    CHECK(g.is_label_ordered());
    sum += static_cast<double>(g.edge_count());
  }
  const double mean = sum / seeds;
  const double sd_of_mean = std::sqrt(4950 * 0.1 * 0.9 / seeds);
  CHECK(std::abs(mean - 495.0) <= 3 * sd_of_mean);
}

TEST_CASE("random DAG pair frequencies are uniform across positions") {
  // Every pair should be present with probability p, regardless of where it
  // falls inside its row.
  const std::size_t n = 12;
  const int seeds = 20000;
  std::vector<int> hits(n * n, 0);
  for (int s = 0; s < seeds; ++s) {
    auto g = generate_random_dag({n, 0.3, static_cast<std::uint64_t>(s)});
    for (auto [u, v] : g.edges()) ++hits[u * n + v];
  }
  const double sd = std::sqrt(seeds * 0.3 * 0.7);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      CHECK(std::abs(hits[i * n + j] - seeds * 0.3) <= 4.5 * sd);
    }
  }
}

TEST_CASE("random DAG is deterministic across thread counts") {
  const RandomDagParams params{5000, 0.004, 77};
  auto one = generate_random_dag(params, 1);
  CHECK(one == generate_random_dag(params, 1));
  CHECK(one == generate_random_dag(params, 4));
  CHECK(one == generate_random_dag(params, 8));
  CHECK_FALSE(one == generate_random_dag({5000, 0.004, 78}, 1));
  CHECK(one.is_label_ordered());
}

TEST_CASE("exact degree pmf small cases") {
  for (double p : {0.0, 0.2, 0.5, 1.0}) {
    auto pmf = follower_degree_pmf_exact(2, p);
    REQUIRE(pmf.size() == 2);
    CHECK(pmf[0] == doctest::Approx(1 - p / 2).epsilon(1e-14));
    CHECK(pmf[1] == doctest::Approx(p / 2).epsilon(1e-14));
  }
  auto uniform = follower_degree_pmf_exact(4, 1.0);
  for (std::size_t k = 0; k < 4; ++k) CHECK(uniform[k] == doctest::Approx(0.25));
  CHECK(follower_degree_pmf_exact(1, 0.7).probability == std::vector<double>{1.0});
}

TEST_CASE("exact degree pmf matches direct summation and normalizes") {
  for (std::size_t n : {1u, 3u, 7u, 50u, 400u}) {
    for (double p : {0.0, 1e-4, 0.05, 0.3, 0.9, 1.0}) {
      auto pmf = follower_degree_pmf_exact(n, p);
      auto direct = testing::direct_degree_pmf(n, p);
      CHECK(std::abs(pmf.sum() - 1.0) <= 1e-9);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(pmf[k] == doctest::Approx(direct[k]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("exact degree pmf plateau height is 1/(np)") {
  const std::size_t n = 1000;
  const double p = 0.05;
  auto pmf = follower_degree_pmf_exact(n, p);
  const double np = n * p;
  const double bound = np - 4 * std::sqrt(np * (1 - p));
  for (std::size_t k = 0; static_cast<double>(k) <= bound; ++k) {
    const double height = np * pmf[k];
    CHECK(height >= 0.9);
    CHECK(height <= 1.1);
  }
}

TEST_CASE("degree histogram") {
  std::vector<InfluenceGraph> none{generate_random_dag({6, 0.0, 3})};
  auto point = follower_degree_histogram(none);
  CHECK(point[0] == 1.0);
  CHECK(point.sum() == doctest::Approx(1.0));

  std::vector<InfluenceGraph> full{generate_random_dag({4, 1.0, 3})};
  auto uniform = follower_degree_histogram(full);
  for (std::size_t k = 0; k < 4; ++k) CHECK(uniform[k] == doctest::Approx(0.25));

  CHECK_THROWS_AS(follower_degree_histogram({}), std::invalid_argument);
  std::vector<InfluenceGraph> mixed{generate_random_dag({4, 0.5, 1}),
                                    generate_random_dag({5, 0.5, 1})};
  CHECK_THROWS_AS(follower_degree_histogram(mixed), std::invalid_argument);
}

TEST_CASE("degree histogram converges to the exact pmf") {
  std::vector<InfluenceGraph> graphs;
  graphs.reserve(10000);
  for (std::uint64_t s = 0; s < 10000; ++s) graphs.push_back(generate_random_dag({50, 0.1, s}));
  auto empirical = follower_degree_histogram(graphs);
  auto exact = follower_degree_pmf_exact(50, 0.1);
  CHECK(stats::total_variation(empirical.probability, exact.probability) <= 0.02);
}

TEST_CASE("conditional neighbour degrees on a star") {
  const NodeId leaves = 37;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  auto star = InfluenceGraph::from_edges(leaves + 1, edges);

  auto exact = conditional_neighbor_degree_distribution(star, BucketScheme::linear(1));
  REQUIRE(exact.size() == 1);
  CHECK(exact.begin()->first == DegreeBucket{leaves, leaves});
  CHECK(exact.begin()->second.probability == std::vector<double>{1.0});

  auto logb = conditional_neighbor_degree_distribution(star);
  REQUIRE(logb.size() == 1);
  CHECK(logb.begin()->first == DegreeBucket{32, 63});
}

TEST_CASE("conditional neighbour degrees: empty and normalized") {
  CHECK(conditional_neighbor_degree_distribution(generate_random_dag({10, 0.0, 1})).empty());
  auto g = generate_random_dag({1000, 0.05, 9});
  for (auto scheme : {BucketScheme::log2(), BucketScheme::linear(5)}) {
    auto buckets = conditional_neighbor_degree_distribution(g, scheme);
    CHECK_FALSE(buckets.empty());
    for (const auto& [bucket, pmf] : buckets) {
      CHECK(bucket.lo <= bucket.hi);
      CHECK(std::abs(pmf.sum() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("bucket_of") {
  CHECK(bucket_of(1, BucketScheme::log2()) == DegreeBucket{1, 1});
  CHECK(bucket_of(5, BucketScheme::log2()) == DegreeBucket{4, 7});
  CHECK(bucket_of(8, BucketScheme::log2()) == DegreeBucket{8, 15});
  CHECK(bucket_of(7, BucketScheme::linear(5)) == DegreeBucket{5, 9});
  CHECK_THROWS_AS(bucket_of(7, BucketScheme::linear(0)), std::invalid_argument);
}

TEST_CASE("preferential graph seed clique") {
  for (std::size_t m : {1u, 2u, 4u}) {
    auto g = generate_preferential_graph({m + 1, m, 5});
    CHECK(g.edge_count() == (m + 1) * m);  // complete, both directions
    for (NodeId u = 0; u <= m; ++u) {
      for (NodeId v = 0; v <= m; ++v) CHECK(g.has_edge(u, v) == (u != v));
    }
  }
}

TEST_CASE("preferential graph link count") {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{10, 1}, {200, 3}, {1000, 5}}) {
    const std::size_t links = m * (n - m) + m * (m - 1) / 2;
    CHECK(generate_preferential_graph({n, m, 11}).edge_count() == 2 * links);
    auto one_way = generate_preferential_graph({n, m, 11, false});
    CHECK(one_way.edge_count() == links);
    CHECK(one_way.is_label_ordered());
  }
}

TEST_CASE("preferential graph is heavy tailed and deterministic") {
  auto g = generate_preferential_graph({10000, 3, 21});
  std::size_t max_degree = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) max_degree = std::max(max_degree, g.out_degree(u));
  CHECK(max_degree > 30);
  CHECK(g == generate_preferential_graph({10000, 3, 21}));
}

TEST_CASE("preferential graph rejects bad m") {
  CHECK_THROWS_AS(generate_preferential_graph({10, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_preferential_graph({3, 3, 1}), std::invalid_argument);
}

TEST_CASE("from_edges validation and reachability") {
  CHECK_THROWS_AS(InfluenceGraph::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(InfluenceGraph::from_edges(3, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(InfluenceGraph::from_edges(3, {{0, 3}}), std::invalid_argument);
  auto g = InfluenceGraph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}, {2, 0}});
  CHECK(g.reachable_from(0) == std::vector<NodeId>{0, 1, 2});
  CHECK(g.reachable_from(3) == std::vector<NodeId>{3, 4});
  CHECK_FALSE(g.is_label_ordered());
}
