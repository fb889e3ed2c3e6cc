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

// Exact and asymptotic cascade-size laws for cascades on random DAGs.
//
// beta is the probability that one informed node does not inform one given
// later node. For per-edge passing beta = 1 - p*alpha; for the dependent
// (all-or-nothing) passing variant the alpha decision is per node and
// beta = 1 - p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdag/stats.hpp"

namespace rdag::analytic {

// 1 - beta^k evaluated as -expm1(k log beta), accurate for beta near 1.
double one_minus_beta_pow(double beta, std::uint64_t k);

// beta = 1 - p*alpha (independent passing).
double beta_from_edge_passing(double p, double alpha);

// Table of P(n, k) for 1 <= n <= n_max, 1 <= k <= k_max, row-major.
class RecurrenceTable {
 public:
  RecurrenceTable(double beta, std::optional<double> alpha, std::size_t n_max,
                  std::size_t k_max);

  double beta() const noexcept { return beta_; }
  // Set for the dependent-passing variant.
  std::optional<double> alpha() const noexcept { return alpha_; }
  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t k_max() const noexcept { return k_max_; }

  // P(n, k); zero outside 1 <= k <= n. n must be in [1, n_max].
  double at(std::size_t n, std::size_t k) const noexcept;
  std::span<const double> row(std::size_t n) const noexcept;
  std::span<double> mutable_row(std::size_t n) noexcept;

 private:
  double beta_;
  std::optional<double> alpha_;
  std::size_t n_max_;
  std::size_t k_max_;
  std::vector<double> values_;
};

// P(1,1) = 1, P(n,k) = beta^k P(n-1,k) + (1 - beta^(k-1)) P(n-1,k-1).
RecurrenceTable exact_pnk(std::size_t n_max, std::size_t k_max, double beta);

// P(1,1) = alpha,
// P(n,k) = (1 - (1 - beta^k) alpha) P(n-1,k) + alpha (1 - beta^(k-1)) P(n-1,k-1).
// Rows sum to alpha, not 1: the start node stays silent with probability
// 1 - alpha and the spreader count is then 0.
RecurrenceTable variant_exact_pnk(std::size_t n_max, std::size_t k_max, double beta,
                                  double alpha);

enum class Source { exact, variant_exact, asymptotic, laurent, empirical };

std::string_view to_string(Source source);

// Size law over k = 1..k_max. `residual` is the mass of sizes > k_max and
// `zero_mass` the mass of size 0 (only the variant has any).
struct SizeDistribution {
  Source source = Source::exact;
  std::size_t n = 0;
  double beta = 0.0;
  std::optional<double> alpha;
  std::vector<double> values;
  double residual = 0.0;
  double zero_mass = 0.0;

  std::size_t k_max() const noexcept { return values.size(); }
  double at(std::size_t k) const noexcept {
    return k >= 1 && k <= values.size() ? values[k - 1] : 0.0;
  }
  double total_mass() const noexcept;

  // Sizes with their masses, with the residual as a truncated tail when
  // k_max < n.
  stats::EmpiricalDistribution to_empirical() const;
};

// S(n,k) = (1/n) sum_{i=1}^{n} P(i,k), computed by streaming rows of P in
// O(n k_max) time and O(k_max) memory.
SizeDistribution exact_snk(std::size_t n, std::size_t k_max, double beta);

// Variant counterpart. With `condition_on_spread` the values are divided by
// alpha, giving the law of the spreader count given that the start spread.
SizeDistribution variant_exact_snk(std::size_t n, std::size_t k_max, double beta,
                                   double alpha, bool condition_on_spread = false);

// n S(n,k) for every n in `checkpoints` (ascending) from one streamed pass.
// Result is indexed [checkpoint][k-1].
std::vector<std::vector<double>> scaled_snk_at(std::span<const std::size_t> checkpoints,
                                               std::size_t k_max, double beta,
                                               std::optional<double> alpha = {});

// A_k = lim n S(n,k) = 1 / (1 - beta^k). Requires 0 <= beta < 1, k >= 1.
double asymptotic_ak(double beta, std::uint64_t k);

// Same limit parameterised by epsilon = 1 - beta, which keeps full precision
// for tiny epsilon.
double asymptotic_ak_eps(double epsilon, std::uint64_t k);

// 1/(k eps) + (k-1)/(2k): two leading terms of the Laurent expansion of A_k
// around eps = 0. Requires 0 < eps < 1.
double laurent_approx(double epsilon, std::uint64_t k);

struct PowerLawRegime {
  // 1/(p alpha): sizes well below this follow the k^-1 law.
  double k_upper = 0.0;
  // 1/(n p alpha): leading coefficient of S(n,k) ~ coefficient / k.
  double coefficient = 0.0;
};

// Requires 0 < p*alpha <= 1 and n >= 1.
PowerLawRegime power_law_regime(double p, double alpha, std::size_t n);

}  // namespace rdag::analytic
