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

#include "rdag/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rdag::stats {

double EmpiricalDistribution::total_mass() const noexcept {
  return std::accumulate(probability.begin(), probability.end(), 0.0) + tail_mass;
}

void EmpiricalDistribution::check_normalized(double tolerance) const {
  if (support.size() != probability.size()) {
    throw std::invalid_argument("support and probability sizes differ");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i > 0 && support[i] <= support[i - 1]) {
      throw std::invalid_argument("support must be strictly increasing");
    }
    if (!(probability[i] >= 0.0)) {
      throw std::invalid_argument("negative probability");
    }
  }
  if (!(tail_mass >= 0.0)) throw std::invalid_argument("negative tail mass");
  const double total = total_mass();
  if (!(std::abs(total - 1.0) <= tolerance)) {
    throw std::invalid_argument("distribution is not normalized (total mass " +
                                std::to_string(total) + ")");
  }
}

double EmpiricalDistribution::at(std::uint64_t k) const noexcept {
  auto it = std::lower_bound(support.begin(), support.end(), k);
  if (it == support.end() || *it != k) return 0.0;
  return probability[static_cast<std::size_t>(it - support.begin())];
}

EmpiricalDistribution from_counts(std::span<const std::uint64_t> counts_by_size) {
  const std::uint64_t total =
      std::accumulate(counts_by_size.begin(), counts_by_size.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("empty histogram");
  EmpiricalDistribution out;
  out.sample_count = total;
  for (std::size_t k = 0; k < counts_by_size.size(); ++k) {
    if (counts_by_size[k] == 0) continue;
    out.support.push_back(k);
    out.probability.push_back(static_cast<double>(counts_by_size[k]) /
                              static_cast<double>(total));
  }
  return out;
}

EmpiricalDistribution from_samples(std::span<const std::uint64_t> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  EmpiricalDistribution out;
  out.sample_count = sorted.size();
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.support.push_back(sorted[i]);
    out.probability.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  return out;
}

namespace {

struct AlignedPoint {
  std::uint64_t k;
  double a;
  double b;
};

struct Aligned {
  std::vector<AlignedPoint> points;
  double tail_a = 0.0;
  double tail_b = 0.0;
};

// Merges both supports up to the common cutoff; everything beyond the cutoff
// goes into the tails.
Aligned align(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  a.check_normalized();
  b.check_normalized();
  std::uint64_t cutoff = std::numeric_limits<std::uint64_t>::max();
  if (a.truncated_after) cutoff = std::min(cutoff, *a.truncated_after);
  if (b.truncated_after) cutoff = std::min(cutoff, *b.truncated_after);

  Aligned out;
  out.tail_a = a.tail_mass;
  out.tail_b = b.tail_mass;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.support.size() || j < b.support.size()) {
    const std::uint64_t ka =
        i < a.support.size() ? a.support[i] : std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t kb =
        j < b.support.size() ? b.support[j] : std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t k = std::min(ka, kb);
    const double pa = ka == k ? a.probability[i++] : 0.0;
    const double pb = kb == k ? b.probability[j++] : 0.0;
    if (k > cutoff) {
      out.tail_a += pa;
      out.tail_b += pb;
    } else {
      out.points.push_back({k, pa, pb});
    }
  }
  return out;
}

}  // namespace

double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const Aligned aligned = align(a, b);
  double cdf_a = 0.0;
  double cdf_b = 0.0;
  double sup = 0.0;
  for (const auto& pt : aligned.points) {
    cdf_a += pt.a;
    cdf_b += pt.b;
    sup = std::max(sup, std::abs(cdf_a - cdf_b));
  }
  return std::clamp(sup, 0.0, 1.0);
}

double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const Aligned aligned = align(a, b);
  double sum = std::abs(aligned.tail_a - aligned.tail_b);
  for (const auto& pt : aligned.points) sum += std::abs(pt.a - pt.b);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double pa = k < a.size() ? a[k] : 0.0;
    const double pb = k < b.size() ? b[k] : 0.0;
    sum += std::abs(pa - pb);
  }
  return 0.5 * sum;
}

std::string_view to_string(FitMethod method) {
  return method == FitMethod::mle ? "mle" : "regression";
}

FitMethod parse_fit_method(std::string_view text) {
  if (text == "regression") return FitMethod::regression;
  if (text == "mle") return FitMethod::mle;
  throw std::invalid_argument("unknown fit method '" + std::string(text) + "'");
}

namespace {

// Mean of log k under p(k) ~ k^exponent on [k_min, k_max].
double expected_log(double exponent, std::span<const double> log_k) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double lk : log_k) peak = std::max(peak, exponent * lk);
  double z = 0.0;
  double weighted = 0.0;
  for (double lk : log_k) {
    const double w = std::exp(exponent * lk - peak);
    z += w;
    weighted += w * lk;
  }
  return weighted / z;
}

double mle_exponent(std::uint64_t k_min, std::uint64_t k_max, double mean_log) {
  std::vector<double> log_k;
  log_k.reserve(k_max - k_min + 1);
  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    log_k.push_back(std::log(static_cast<double>(k)));
  }
  // The score E_exponent[log k] - mean_log is increasing in the exponent
  // (its derivative is Var[log k]), so bisection finds the unique root.
  double lo = -8.0;
  double hi = 8.0;
  while (expected_log(lo, log_k) > mean_log && lo > -1e3) lo *= 2.0;
  while (expected_log(hi, log_k) < mean_log && hi < 1e3) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (expected_log(mid, log_k) < mean_log) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PowerLawFit fit_power_law_exponent(const EmpiricalDistribution& dist,
                                   std::uint64_t k_min, std::uint64_t k_max,
                                   FitMethod method) {
  if (k_min == 0 || k_min >= k_max) {
    throw std::invalid_argument("fit range must satisfy 1 <= k_min < k_max");
  }
  if (dist.truncated_after && k_max > *dist.truncated_after) {
    throw std::invalid_argument("fit range extends past the truncation point");
  }

  PowerLawFit fit;
  fit.k_min = k_min;
  fit.k_max = k_max;
  fit.method = method;

  std::vector<std::uint64_t> ks;
  std::vector<double> weights;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const std::uint64_t k = dist.support[i];
    if (k < k_min || k > k_max) continue;
    if (dist.probability[i] > 0.0) {
      ks.push_back(k);
      weights.push_back(dist.probability[i]);
    } else {
      ++fit.zero_points_excluded;
    }
  }
  if (ks.size() < 3) {
    throw std::invalid_argument(
        "power-law fit needs at least 3 positive support points in range");
  }
  fit.points_used = ks.size();
  const double mass = std::accumulate(weights.begin(), weights.end(), 0.0);

  if (method == FitMethod::regression) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      mx += std::log(static_cast<double>(ks[i]));
      my += std::log(weights[i]);
    }
    mx /= static_cast<double>(ks.size());
    my /= static_cast<double>(ks.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double dx = std::log(static_cast<double>(ks[i])) - mx;
      sxy += dx * (std::log(weights[i]) - my);
      sxx += dx * dx;
    }
    fit.exponent = sxy / sxx;
  } else {
    double mean_log = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      mean_log += weights[i] * std::log(static_cast<double>(ks[i]));
    }
    fit.exponent = mle_exponent(k_min, k_max, mean_log / mass);
  }

  EmpiricalDistribution in_range;
  in_range.support = ks;
  in_range.probability = weights;
  for (double& w : in_range.probability) w /= mass;
  fit.goodness =
      ks_statistic(in_range, DiscretePowerLaw(fit.exponent, k_min, k_max).distribution());
  return fit;
}

std::vector<LogBin> log_binning(const EmpiricalDistribution& dist, double base) {
  if (!(base > 1.0)) throw std::invalid_argument("log-binning base must exceed 1");
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    if (dist.support[i] > 0 && dist.probability[i] > 0.0) last = dist.support[i];
  }
  if (last == 0) throw std::invalid_argument("nothing to bin");

  auto edge = [base](int i) {
    const double x = std::pow(base, i);
    return static_cast<std::uint64_t>(std::ceil(x - 1e-9 * x));
  };

  std::vector<LogBin> bins;
  std::size_t cursor = 0;
  std::uint64_t lo = 1;
  for (int i = 1; lo <= last; ++i) {
    const std::uint64_t next = edge(i);
    if (next <= lo) continue;
    LogBin bin;
    bin.lo = lo;
    bin.hi = std::min(next - 1, last);
    double mass = 0.0;
    while (cursor < dist.support.size() && dist.support[cursor] <= bin.hi) {
      if (dist.support[cursor] >= bin.lo) mass += dist.probability[cursor];
      ++cursor;
    }
    if (mass > 0.0) {
      bin.center = std::sqrt(static_cast<double>(bin.lo) * static_cast<double>(bin.hi));
      bin.mean_probability = mass / static_cast<double>(bin.width());
      bins.push_back(bin);
    }
    lo = next;
  }
  return bins;
}

DiscretePowerLaw::DiscretePowerLaw(double exponent, std::uint64_t k_min,
                                   std::uint64_t k_max)
    : k_min_(k_min) {
  if (k_min == 0 || k_min > k_max) {
    throw std::invalid_argument("power law support must satisfy 1 <= k_min <= k_max");
  }
  pmf_.reserve(k_max - k_min + 1);
  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    pmf_.push_back(std::pow(static_cast<double>(k), exponent));
  }
  const double z = std::accumulate(pmf_.begin(), pmf_.end(), 0.0);
  cdf_.reserve(pmf_.size());
  double acc = 0.0;
  for (double& w : pmf_) {
    w /= z;
    acc += w;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

double DiscretePowerLaw::pmf(std::uint64_t k) const noexcept {
  if (k < k_min_ || k - k_min_ >= pmf_.size()) return 0.0;
  return pmf_[k - k_min_];
}

std::uint64_t DiscretePowerLaw::sample(StreamRng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return k_min_ + static_cast<std::uint64_t>(it - cdf_.begin());
}

EmpiricalDistribution DiscretePowerLaw::distribution() const {
  EmpiricalDistribution out;
  out.support.resize(pmf_.size());
  std::iota(out.support.begin(), out.support.end(), k_min_);
  out.probability = pmf_;
  return out;
}

}  // namespace rdag::stats
