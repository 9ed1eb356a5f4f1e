// Copyright 2026 The RLE Authors. All Rights Reserved.
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

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>

#include "rle/core/error.hpp"

namespace rle {

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) noexcept {
  return splitmix64(seed ^ splitmix64(fnv1a64(tag)));
}

/// Deterministic generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; every conversion to reals or indices is
/// done here rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw ParameterError("uniform_index needs n >= 1");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via the Marsaglia polar method (second variate discarded).
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform01() - 1.0;
      const double v = 2.0 * uniform01() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Shape of a symmetric Beta(beta, beta) distribution. beta < 1 gives the
/// U-shaped density that favours draws near 0 and 1.
class BetaShape {
 public:
  explicit BetaShape(double beta) : beta_(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw ParameterError("beta shape must be a positive finite number, got " + std::to_string(beta));
    }
  }

  double value() const noexcept { return beta_; }
  bool u_shaped() const noexcept { return beta_ < 1.0; }

  friend bool operator==(const BetaShape&, const BetaShape&) = default;

 private:
  double beta_;
};

namespace detail {

// log of a Gamma(shape, 1) variate. Marsaglia-Tsang for shape >= 1, boosted
// with U^(1/shape) below 1. Working in log space keeps tiny shapes from
// underflowing to 0/0 in the Beta ratio.
inline double log_gamma_variate(double shape, SeededRng& rng) {
  if (shape < 1.0) {
    const double boosted = log_gamma_variate(shape + 1.0, rng);
    return boosted + std::log(rng.uniform_open()) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open();
    const double log_v = std::log(v);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * log_v) return std::log(d) + log_v;
  }
}

}  // namespace detail

/// One draw from Beta(beta, beta) in [0, 1] as X / (X + Y) with X, Y i.i.d.
/// Gamma(beta). Exact 0 or 1 can occur for very small shapes and is passed
/// through.
inline double beta_sample(const BetaShape& shape, SeededRng& rng) {
  const double log_x = detail::log_gamma_variate(shape.value(), rng);
  const double log_y = detail::log_gamma_variate(shape.value(), rng);
  return 1.0 / (1.0 + std::exp(log_y - log_x));
}

}  // namespace rle
