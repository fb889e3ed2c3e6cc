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

// Reference computations used only by tests. They follow the model
// definitions directly and share no code with the library's fast paths.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace rdag::testing {

// All ordered pairs (i, j), i < j, of an n-node DAG.
inline std::vector<std::pair<int, int>> dag_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

// Pr[cascade from node 0 informs exactly k nodes], k = 0..n, by enumerating
// every subset of open pairs; each pair is open with probability 1 - beta.
inline std::vector<double> enumerate_cascade_sizes(int n, double beta) {
  const auto pairs = dag_pairs(n);
  const std::size_t m = pairs.size();
  std::vector<double> out(n + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double w = 1.0;
    for (std::size_t e = 0; e < m; ++e) w *= (mask >> e & 1) ? 1.0 - beta : beta;
    std::vector<char> informed(n, 0);
    informed[0] = 1;
    // Pairs are listed in increasing i, and an open pair only matters when i
    // is informed, which is settled before any pair leaving i is visited.
    for (std::size_t e = 0; e < m; ++e) {
      if ((mask >> e & 1) && informed[pairs[e].first]) informed[pairs[e].second] = 1;
    }
    int k = 0;
    for (char c : informed) k += c;
    out[k] += w;
  }
  return out;
}

// Dependent passing from node 0: edges present with probability p, each
// informed node spreads to all out-neighbours with probability alpha.
// Returns Pr[spreader count = k], k = 0..n, by enumerating edge sets and
// node decisions.
inline std::vector<double> enumerate_spreader_counts(int n, double p, double alpha) {
  const auto pairs = dag_pairs(n);
  const std::size_t m = pairs.size();
  std::vector<double> out(n + 1, 0.0);
  for (std::uint64_t emask = 0; emask < (std::uint64_t{1} << m); ++emask) {
    double we = 1.0;
    for (std::size_t e = 0; e < m; ++e) we *= (emask >> e & 1) ? p : 1.0 - p;
    for (std::uint64_t cmask = 0; cmask < (std::uint64_t{1} << n); ++cmask) {
      double w = we;
      for (int v = 0; v < n; ++v) w *= (cmask >> v & 1) ? alpha : 1.0 - alpha;
      std::vector<char> informed(n, 0);
      informed[0] = 1;
      int spreaders = 0;
      for (int v = 0; v < n; ++v) {
        if (!informed[v] || !(cmask >> v & 1)) continue;
        ++spreaders;
        for (std::size_t e = 0; e < m; ++e) {
          if (pairs[e].first == v && (emask >> e & 1)) informed[pairs[e].second] = 1;
        }
      }
      out[spreaders] += w;
    }
  }
  return out;
}

// (1/n) sum_{i=k}^{n-1} C(i,k) p^k (1-p)^(i-k), summed term by term in log
// space.
inline std::vector<double> direct_degree_pmf(std::size_t n, double p) {
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      double term;
      if (p == 0.0) {
        term = k == 0 ? 1.0 : 0.0;
      } else if (p == 1.0) {
        term = i == k ? 1.0 : 0.0;
      } else {
        const double di = static_cast<double>(i);
        const double dk = static_cast<double>(k);
        term = std::exp(std::lgamma(di + 1) - std::lgamma(dk + 1) - std::lgamma(di - dk + 1) +
                        dk * std::log(p) + (di - dk) * std::log1p(-p));
      }
      sum += term;
    }
    out[k] = sum / static_cast<double>(n);
  }
  return out;
}

}  // namespace rdag::testing
