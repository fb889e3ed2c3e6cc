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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdag/graph.hpp"

namespace rdag {

enum class PassingMode {
  // Each newly informed node tries every out-edge independently with
  // probability alpha.
  independent,
  // Each newly informed node makes one alpha decision; on success it informs
  // all of its out-neighbours and counts as a spreader.
  dependent,
};

std::string_view to_string(PassingMode mode);
PassingMode parse_passing_mode(std::string_view text);

struct CascadeParams {
  double alpha = 0.0;
  PassingMode mode = PassingMode::independent;
  std::optional<NodeId> start;  // uniform when unset
  std::uint64_t seed = 0;

  void validate(std::size_t node_count) const;
};

struct CascadeResult {
  std::size_t informed_count = 0;
  // Dependent mode: nodes whose alpha decision succeeded. Independent mode:
  // informed nodes with at least one out-edge to try.
  std::size_t spreader_count = 0;
  // Number of frontier expansions.
  std::size_t rounds = 0;

  // The size statistic used by histograms for `mode`.
  std::size_t size(PassingMode mode) const noexcept {
    return mode == PassingMode::dependent ? spreader_count : informed_count;
  }
};

// Counts of cascade sizes; index = size.
class Histogram {
 public:
  void add(std::size_t size, std::uint64_t count = 1);
  void merge(const Histogram& other);

  std::uint64_t count(std::size_t size) const noexcept {
    return size < counts_.size() ? counts_[size] : 0;
  }
  std::uint64_t total() const noexcept { return total_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  // Largest size with a nonzero count, 0 if empty.
  std::size_t max_size() const noexcept;
  // Smallest size s with P(size <= s) >= q.
  std::size_t quantile(double q) const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Reusable per-thread cascade state for one graph.
//
// Randomness is keyed, never shared: the node u draws from the stream
// derive_key(key, u), one 64-bit value per out-edge in adjacency order
// (independent mode) or a single value (dependent mode). Outcomes therefore
// do not depend on frontier order, and for a fixed key the set of open edges
// only grows with alpha.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const InfluenceGraph& graph);

  CascadeResult run(NodeId start, double alpha, PassingMode mode, std::uint64_t key);

  // Nodes informed by the last run, in the order they were informed.
  std::span<const NodeId> informed() const noexcept { return order_; }

 private:
  bool mark(NodeId v) noexcept;

  const InfluenceGraph* graph_;
  std::vector<std::uint64_t> informed_bits_;
  std::vector<NodeId> order_;
};

// One cascade per the four CGM steps: pick a start, let newly informed nodes
// pass the information on, repeat until nobody new is informed.
CascadeResult simulate_cascade(const InfluenceGraph& graph, const CascadeParams& params);

// Annealed Monte Carlo: every trial draws a fresh random DAG, a uniform start
// node and one cascade. Histogram index is informed_count (independent) or
// spreader_count (dependent). Trial t uses graph seed
// derive_key(dag.seed ^ c1, t) and cascade seed derive_key(cascade.seed ^ c2, t),
// so results are identical for every `threads` (0 = hardware concurrency).
Histogram sample_annealed_size_distribution(const RandomDagParams& dag,
                                            const CascadeParams& cascade,
                                            std::uint64_t trials,
                                            std::size_t threads = 1);

// Quenched Monte Carlo: repeated cascades on one graph, uniform starts unless
// cascade.start is set. Trial t uses seed derive_key(cascade.seed, t).
Histogram batch_on_fixed_graph(const InfluenceGraph& graph, const CascadeParams& cascade,
                               std::uint64_t trials, std::size_t threads = 1);

}  // namespace rdag
