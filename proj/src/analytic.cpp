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

#include "rdag/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rdag::analytic {

double one_minus_beta_pow(double beta, std::uint64_t k) {
  if (k == 0) return 0.0;
  if (beta == 0.0) return 1.0;
  return -std::expm1(static_cast<double>(k) * std::log(beta));
}

double beta_from_edge_passing(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  return 1.0 - p * alpha;
}

RecurrenceTable::RecurrenceTable(double beta, std::optional<double> alpha,
                                 std::size_t n_max, std::size_t k_max)
    : beta_(beta), alpha_(alpha), n_max_(n_max), k_max_(k_max),
      values_(n_max * k_max, 0.0) {}

double RecurrenceTable::at(std::size_t n, std::size_t k) const noexcept {
  if (n < 1 || n > n_max_ || k < 1 || k > k_max_ || k > n) return 0.0;
  return values_[(n - 1) * k_max_ + (k - 1)];
}

std::span<const double> RecurrenceTable::row(std::size_t n) const noexcept {
  return {values_.data() + (n - 1) * k_max_, k_max_};
}

std::span<double> RecurrenceTable::mutable_row(std::size_t n) noexcept {
  return {values_.data() + (n - 1) * k_max_, k_max_};
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::exact: return "exact";
    case Source::variant_exact: return "variant_exact";
    case Source::asymptotic: return "asymptotic";
    case Source::laurent: return "laurent";
    case Source::empirical: return "empirical";
  }
  return "unknown";
}

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

void check_shape(std::size_t n, std::size_t k_max) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (k_max < 1 || k_max > n) {
    throw std::invalid_argument("k_max must satisfy 1 <= k_max <= n");
  }
}

// Advances P(n-1, .) to P(n, .) in place:
//   P(n,k) = stay[k] P(n-1,k) + move[k] P(n-1,k-1).
// Slot 0 of the row buffer is the permanent zero P(n, 0).
class RowStepper {
 public:
  RowStepper(double beta, std::optional<double> alpha, std::size_t k_max)
      : stay_(k_max + 1), move_(k_max + 1), row_(k_max + 1, 0.0) {
    const double a = alpha.value_or(1.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double informed_k = one_minus_beta_pow(beta, k);
      const double informed_km1 = one_minus_beta_pow(beta, k - 1);
      if (alpha) {
        stay_[k] = 1.0 - informed_k * a;
        move_[k] = a * informed_km1;
      } else {
        stay_[k] = beta == 0.0 ? 0.0 : std::exp(static_cast<double>(k) * std::log(beta));
        move_[k] = informed_km1;
      }
    }
    row_[1] = a;  // P(1, 1)
  }

  void step(std::size_t n) {
    const std::size_t top = std::min(n, row_.size() - 1);
    for (std::size_t k = top; k >= 1; --k) {
      row_[k] = stay_[k] * row_[k] + move_[k] * row_[k - 1];
    }
  }

  // P(n, 1..k_max)
  std::span<const double> current() const { return {row_.data() + 1, row_.size() - 1}; }

 private:
  std::vector<double> stay_;
  std::vector<double> move_;
  std::vector<double> row_;
};

RecurrenceTable fill_table(std::size_t n_max, std::size_t k_max, double beta,
                           std::optional<double> alpha) {
  check_shape(n_max, k_max);
  check_probability(beta, "beta");
  if (alpha) check_probability(*alpha, "alpha");
  RecurrenceTable table(beta, alpha, n_max, k_max);
  RowStepper stepper(beta, alpha, k_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) stepper.step(n);
    std::ranges::copy(stepper.current(), table.mutable_row(n).begin());
  }
  return table;
}

// Column sums sum_{i=1}^{n} P(i,k), captured at each checkpoint.
std::vector<std::vector<double>> stream_column_sums(
    std::span<const std::size_t> checkpoints, std::size_t k_max, double beta,
    std::optional<double> alpha) {
  std::vector<std::vector<double>> out;
  out.reserve(checkpoints.size());
  std::vector<double> sums(k_max, 0.0);
  RowStepper stepper(beta, alpha, k_max);
  std::size_t next = 0;
  const std::size_t last = checkpoints.empty() ? 0 : checkpoints.back();
  for (std::size_t n = 1; n <= last; ++n) {
    if (n > 1) stepper.step(n);
    auto row = stepper.current();
    for (std::size_t k = 0; k < k_max; ++k) sums[k] += row[k];
    while (next < checkpoints.size() && checkpoints[next] == n) {
      out.push_back(sums);
      ++next;
    }
  }
  return out;
}

SizeDistribution averaged(std::size_t n, std::size_t k_max, double beta,
                          std::optional<double> alpha) {
  check_shape(n, k_max);
  check_probability(beta, "beta");
  if (alpha) check_probability(*alpha, "alpha");
  const std::size_t checkpoint[] = {n};
  auto sums = std::move(stream_column_sums(checkpoint, k_max, beta, alpha).front());

  SizeDistribution dist;
  dist.source = alpha ? Source::variant_exact : Source::exact;
  dist.n = n;
  dist.beta = beta;
  dist.alpha = alpha;
  dist.values = std::move(sums);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : dist.values) v *= inv_n;

  // Every row of P sums to alpha (1 for the base recurrence).
  const double row_mass = alpha.value_or(1.0);
  const double covered = std::accumulate(dist.values.begin(), dist.values.end(), 0.0);
  dist.residual = k_max < n ? std::max(0.0, row_mass - covered) : 0.0;
  dist.zero_mass = 1.0 - row_mass;
  return dist;
}

}  // namespace

RecurrenceTable exact_pnk(std::size_t n_max, std::size_t k_max, double beta) {
  return fill_table(n_max, k_max, beta, std::nullopt);
}

RecurrenceTable variant_exact_pnk(std::size_t n_max, std::size_t k_max, double beta,
                                  double alpha) {
  return fill_table(n_max, k_max, beta, alpha);
}

double SizeDistribution::total_mass() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0) + residual + zero_mass;
}

stats::EmpiricalDistribution SizeDistribution::to_empirical() const {
  stats::EmpiricalDistribution out;
  if (zero_mass > 0.0) {
    out.support.push_back(0);
    out.probability.push_back(zero_mass);
  }
  for (std::size_t k = 1; k <= values.size(); ++k) {
    out.support.push_back(k);
    out.probability.push_back(values[k - 1]);
  }
  if (n == 0 || values.size() < n) {
    out.truncated_after = values.size();
    out.tail_mass = residual;
  }
  return out;
}

SizeDistribution exact_snk(std::size_t n, std::size_t k_max, double beta) {
  return averaged(n, k_max, beta, std::nullopt);
}

SizeDistribution variant_exact_snk(std::size_t n, std::size_t k_max, double beta,
                                   double alpha, bool condition_on_spread) {
  SizeDistribution dist = averaged(n, k_max, beta, alpha);
  if (condition_on_spread) {
    if (alpha == 0.0) {
      throw std::invalid_argument("cannot condition on spreading when alpha = 0");
    }
    for (double& v : dist.values) v /= alpha;
    dist.residual /= alpha;
    dist.zero_mass = 0.0;
  }
  return dist;
}

std::vector<std::vector<double>> scaled_snk_at(std::span<const std::size_t> checkpoints,
                                               std::size_t k_max, double beta,
                                               std::optional<double> alpha) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 1) {
    throw std::invalid_argument("checkpoints must be ascending and positive");
  }
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  check_probability(beta, "beta");
  if (alpha) check_probability(*alpha, "alpha");
  return stream_column_sums(checkpoints, k_max, beta, alpha);
}

double asymptotic_ak(double beta, std::uint64_t k) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("asymptotic A_k needs 0 <= beta < 1");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return 1.0 / one_minus_beta_pow(beta, k);
}

double asymptotic_ak_eps(double epsilon, std::uint64_t k) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return -1.0 / std::expm1(static_cast<double>(k) * std::log1p(-epsilon));
}

double laurent_approx(double epsilon, std::uint64_t k) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const double dk = static_cast<double>(k);
  return 1.0 / (dk * epsilon) + (dk - 1.0) / (2.0 * dk);
}

PowerLawRegime power_law_regime(double p, double alpha, std::size_t n) {
  check_probability(p, "p");
  check_probability(alpha, "alpha");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double eps = p * alpha;
  if (eps == 0.0) throw std::invalid_argument("p * alpha must be positive");
  return {1.0 / eps, 1.0 / (static_cast<double>(n) * eps)};
}

}  // namespace rdag::analytic
