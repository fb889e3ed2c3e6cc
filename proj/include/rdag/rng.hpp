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

// Keyed random streams. Every stochastic choice in the library draws from a
// stream identified by a 64-bit key, and keys for sub-tasks (a trial, a graph
// row, a node) are derived from their parent key. Results therefore depend
// only on the keys, never on which thread consumed which stream or in what
// order.

#include <cmath>
#include <cstdint>
#include <limits>

namespace rdag {

// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

__extension__ using uint128 = unsigned __int128;

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Key of child stream `index` under `parent`.
constexpr std::uint64_t derive_key(std::uint64_t parent,
                                   std::uint64_t index) noexcept {
  return mix64(mix64(parent ^ 0x6a09e667f3bcc909ULL) + (index + 1) * kGoldenGamma);
}

// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamRng(std::uint64_t key) noexcept : state_(mix64(key)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe to pass to log().
  double uniform_pos() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound == 0) return 0;
    uint128 m = static_cast<uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Integer threshold t such that (draw < t) has probability `prob` for a
// uniform 64-bit draw. prob >= 1 maps to "always" and is handled by callers
// through `always`.
struct BernoulliThreshold {
  std::uint64_t threshold = 0;
  bool always = false;

  explicit BernoulliThreshold(double prob) noexcept {
    if (prob >= 1.0) {
      always = true;
    } else if (prob > 0.0) {
      threshold = static_cast<std::uint64_t>(std::ldexp(prob, 64));
    }
  }

  bool operator()(std::uint64_t draw) const noexcept {
    return always || draw < threshold;
  }
};

}  // namespace rdag
