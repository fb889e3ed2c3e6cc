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

#include "rdag/rng.hpp"

namespace rdag::stats {

// Probability mass over nonnegative integer sizes, support sorted ascending.
// A truncated distribution carries the mass of every size > truncated_after
// in tail_mass.
struct EmpiricalDistribution {
  std::vector<std::uint64_t> support;
  std::vector<double> probability;
  std::uint64_t sample_count = 0;  // 0 when not derived from samples
  std::optional<std::uint64_t> truncated_after;
  double tail_mass = 0.0;

  double total_mass() const noexcept;
  // Throws std::invalid_argument unless total mass is 1 within `tolerance`,
  // support is strictly increasing and probabilities are nonnegative.
  void check_normalized(double tolerance = 1e-9) const;
  double at(std::uint64_t k) const noexcept;
};

// Normalized pmf from counts indexed by size.
EmpiricalDistribution from_counts(std::span<const std::uint64_t> counts_by_size);

// Normalized pmf of a list of observed sizes.
EmpiricalDistribution from_samples(std::span<const std::uint64_t> samples);

// Discrete K-S statistic: sup_k |CDF_a(k) - CDF_b(k)| over the support points
// of both inputs. If either input is truncated, both are compared on the
// coarsened scale where every size above the smaller cutoff is one point.
double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// 1/2 sum_k |a(k) - b(k)| with tail masses included (coarsened as above).
double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// Total variation between dense pmfs indexed from 0; the shorter one is
// padded with zeros.
double total_variation(std::span<const double> a, std::span<const double> b);

enum class FitMethod { regression, mle };

std::string_view to_string(FitMethod method);
FitMethod parse_fit_method(std::string_view text);

struct PowerLawFit {
  double exponent = 0.0;
  std::uint64_t k_min = 0;
  std::uint64_t k_max = 0;
  FitMethod method = FitMethod::regression;
  // K-S distance between the data restricted to [k_min, k_max] and the fitted
  // truncated power law.
  double goodness = 0.0;
  std::size_t points_used = 0;
  // Support points in range with zero mass (skipped by the regression).
  std::size_t zero_points_excluded = 0;
};

// Fits p(k) ~ k^exponent on [k_min, k_max].
//   regression: least-squares slope of log p against log k over the support
//               points with positive mass;
//   mle:        maximum-likelihood exponent of the discrete power law
//               truncated to [k_min, k_max].
// Only relative weights inside the range matter, so unnormalized input is
// accepted. Throws std::invalid_argument on fewer than 3 positive points.
PowerLawFit fit_power_law_exponent(const EmpiricalDistribution& dist,
                                   std::uint64_t k_min, std::uint64_t k_max,
                                   FitMethod method);

struct LogBin {
  std::uint64_t lo = 0;  // first size in the bin
  std::uint64_t hi = 0;  // last size in the bin
  double center = 0.0;   // geometric mean of lo and hi
  double mean_probability = 0.0;  // bin mass / (hi - lo + 1)

  std::uint64_t width() const noexcept { return hi - lo + 1; }
};

// Geometric bins [ceil(base^i), ceil(base^(i+1)) - 1] over the positive
// support; empty integer ranges are skipped. Mass at size 0 and the tail of a
// truncated input are not binned.
std::vector<LogBin> log_binning(const EmpiricalDistribution& dist, double base);

// Discrete power law p(k) proportional to k^exponent on [k_min, k_max].
class DiscretePowerLaw {
 public:
  DiscretePowerLaw(double exponent, std::uint64_t k_min, std::uint64_t k_max);

  double pmf(std::uint64_t k) const noexcept;
  std::uint64_t sample(StreamRng& rng) const;
  EmpiricalDistribution distribution() const;

 private:
  std::uint64_t k_min_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

}  // namespace rdag::stats
