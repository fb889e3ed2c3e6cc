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

#include "rdag/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rdag/parallel.hpp"
#include "rdag/rng.hpp"

namespace rdag {

namespace {

// Sub-stream indices under a trial seed.
constexpr std::uint64_t kStartStream = 0;
constexpr std::uint64_t kCascadeStream = 1;

// Domain separators so graph and cascade streams never coincide when the
// caller reuses one seed for both.
constexpr std::uint64_t kGraphDomain = 0x243f6a8885a308d3ULL;
constexpr std::uint64_t kTrialDomain = 0x13198a2e03707344ULL;

constexpr std::uint64_t kTrialsPerBlock = 4096;

CascadeResult run_trial(CascadeSimulator& sim, std::size_t node_count,
                        const CascadeParams& params, std::uint64_t trial_seed) {
  const NodeId start =
      params.start ? *params.start
                   : static_cast<NodeId>(
                         StreamRng(derive_key(trial_seed, kStartStream)).below(node_count));
  return sim.run(start, params.alpha, params.mode, derive_key(trial_seed, kCascadeStream));
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
}

}  // namespace

std::string_view to_string(PassingMode mode) {
  return mode == PassingMode::dependent ? "dependent" : "independent";
}

PassingMode parse_passing_mode(std::string_view text) {
  if (text == "independent") return PassingMode::independent;
  if (text == "dependent") return PassingMode::dependent;
  throw std::invalid_argument("unknown passing mode '" + std::string(text) + "'");
}

void CascadeParams::validate(std::size_t node_count) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (node_count == 0) throw std::invalid_argument("graph has no nodes");
  if (start && *start >= node_count) {
    throw std::invalid_argument("start node " + std::to_string(*start + 1) +
                                " is out of range 1.." + std::to_string(node_count));
  }
}

void Histogram::add(std::size_t size, std::uint64_t count) {
  if (counts_.size() <= size) counts_.resize(size + 1, 0);
  counts_[size] += count;
  total_ += count;
}

void Histogram::merge(const Histogram& other) {
  if (counts_.size() < other.counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
  total_ += other.total_;
}

std::size_t Histogram::max_size() const noexcept {
  for (std::size_t k = counts_.size(); k-- > 0;) {
    if (counts_[k] != 0) return k;
  }
  return 0;
}

std::size_t Histogram::quantile(double q) const {
  if (total_ == 0) throw std::invalid_argument("empty histogram");
  const double target = q * static_cast<double>(total_);
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    acc += counts_[k];
    if (static_cast<double>(acc) >= target && counts_[k] != 0) return k;
  }
  return max_size();
}

CascadeSimulator::CascadeSimulator(const InfluenceGraph& graph)
    : graph_(&graph), informed_bits_((graph.node_count() + 63) / 64, 0) {
  order_.reserve(std::min<std::size_t>(graph.node_count(), 1024));
}

bool CascadeSimulator::mark(NodeId v) noexcept {
  std::uint64_t& word = informed_bits_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (word & bit) return false;
  word |= bit;
  order_.push_back(v);
  return true;
}

CascadeResult CascadeSimulator::run(NodeId start, double alpha, PassingMode mode,
                                    std::uint64_t key) {
  for (NodeId v : order_) informed_bits_[v >> 6] = 0;
  order_.clear();
  const BernoulliThreshold fires(alpha);
  const bool never = !fires.always && fires.threshold == 0;

  CascadeResult result;
  mark(start);
  std::size_t frontier_begin = 0;
  while (frontier_begin < order_.size()) {
    ++result.rounds;
    const std::size_t frontier_end = order_.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const NodeId u = order_[i];
      const auto targets = graph_->out_neighbors(u);
      if (mode == PassingMode::independent) {
        if (!targets.empty()) ++result.spreader_count;
        if (never) continue;
        StreamRng rng(derive_key(key, u));
        for (NodeId v : targets) {
          if (fires(rng())) mark(v);
        }
      } else {
        if (never) continue;
        StreamRng rng(derive_key(key, u));
        if (!fires(rng())) continue;
        ++result.spreader_count;
        for (NodeId v : targets) mark(v);
      }
    }
    frontier_begin = frontier_end;
  }
  result.informed_count = order_.size();
  return result;
}

CascadeResult simulate_cascade(const InfluenceGraph& graph, const CascadeParams& params) {
  params.validate(graph.node_count());
  CascadeSimulator sim(graph);
  return run_trial(sim, graph.node_count(), params, params.seed);
}

Histogram sample_annealed_size_distribution(const RandomDagParams& dag,
                                            const CascadeParams& cascade,
                                            std::uint64_t trials, std::size_t threads) {
  dag.validate();
  cascade.validate(dag.n);
  check_trials(trials);

  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<Histogram> partial(blocks);
  for_each_block(trials, kTrialsPerBlock, threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   for (std::uint64_t t = begin; t < end; ++t) {
                     RandomDagParams trial_dag = dag;
                     trial_dag.seed = derive_key(dag.seed ^ kGraphDomain, t);
                     const InfluenceGraph graph = generate_random_dag(trial_dag);
                     CascadeSimulator sim(graph);
                     const CascadeResult r = run_trial(
                         sim, dag.n, cascade, derive_key(cascade.seed ^ kTrialDomain, t));
                     partial[b].add(r.size(cascade.mode));
                   }
                 });

  Histogram out;
  for (const auto& h : partial) out.merge(h);
  return out;
}

Histogram batch_on_fixed_graph(const InfluenceGraph& graph, const CascadeParams& cascade,
                               std::uint64_t trials, std::size_t threads) {
  cascade.validate(graph.node_count());
  check_trials(trials);

  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<Histogram> partial(blocks);
  for_each_block(trials, kTrialsPerBlock, threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   CascadeSimulator sim(graph);
                   for (std::uint64_t t = begin; t < end; ++t) {
                     const CascadeResult r = run_trial(sim, graph.node_count(), cascade,
                                                       derive_key(cascade.seed, t));
                     partial[b].add(r.size(cascade.mode));
                   }
                 });

  Histogram out;
  for (const auto& h : partial) out.merge(h);
  return out;
}

}  // namespace rdag
