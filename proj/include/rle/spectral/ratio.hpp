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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"

namespace rle::spectral {

/// Default denominator floor: one 8-bit quantization level.
inline constexpr double kDefaultRatioEps = 1.0 / 255.0;

/// Per-pixel band ratio. Pixels whose denominator is below eps are undefined.
struct RatioMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;  // NaN where undefined
  std::vector<bool> defined;

  std::size_t defined_count() const { return static_cast<std::size_t>(std::ranges::count(defined, true)); }
};

template <std::floating_point T>
RatioMap band_ratio_map(const ImageTensor<T>& num, const ImageTensor<T>& den, double eps = kDefaultRatioEps) {
  if (num.channels() != 1 || den.channels() != 1) throw ShapeError("band ratio needs single-channel images");
  if (!num.same_shape(den)) throw ShapeError("band ratio images differ in size");
  if (!(eps > 0.0)) throw ParameterError("ratio eps must be positive");
  RatioMap map{num.width(), num.height(), std::vector<double>(num.size()), std::vector<bool>(num.size())};
  const auto n = num.plane(0);
  const auto d = den.plane(0);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dv = static_cast<double>(d[i]);
    if (dv >= eps) {
      map.values[i] = static_cast<double>(n[i]) / dv;
      map.defined[i] = true;
    } else {
      map.values[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return map;
}

struct RatioStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double coefficient_of_variation = 0.0;
  std::size_t count = 0;
};

/// Statistics over the defined pixels selected by `region_mask`. An empty mask
/// selects the whole map.
inline RatioStats ratio_constancy_stats(const RatioMap& ratio, const std::vector<bool>& region_mask = {}) {
  if (!region_mask.empty() && region_mask.size() != ratio.values.size()) {
    throw ShapeError("region mask size does not match the ratio map");
  }
  RatioStats s;
  double sum = 0.0;
  for (std::size_t i = 0; i < ratio.values.size(); ++i) {
    if (!ratio.defined[i] || (!region_mask.empty() && !region_mask[i])) continue;
    sum += ratio.values[i];
    ++s.count;
  }
  if (s.count < 2) throw ParameterError("ratio statistics need at least 2 defined pixels in the region");
  s.mean = sum / static_cast<double>(s.count);
  double sq = 0.0;
  for (std::size_t i = 0; i < ratio.values.size(); ++i) {
    if (!ratio.defined[i] || (!region_mask.empty() && !region_mask[i])) continue;
    const double d = ratio.values[i] - s.mean;
    sq += d * d;
  }
  s.stddev = std::sqrt(sq / static_cast<double>(s.count));
  if (s.mean != 0.0) {
    s.coefficient_of_variation = s.stddev / std::abs(s.mean);
  } else {
    s.coefficient_of_variation = s.stddev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return s;
}

/// Blue-cyan-green-yellow-red ramp over [lo, hi]; undefined pixels are black.
inline Image ratio_false_color(const RatioMap& ratio, double lo, double hi) {
  if (!(hi > lo)) throw ParameterError("false-color range needs hi > lo");
  static constexpr std::array<std::array<double, 3>, 5> kStops{{
      {0.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}}};
  Image out(3, ratio.height, ratio.width);
  for (std::size_t i = 0; i < ratio.values.size(); ++i) {
    if (!ratio.defined[i]) continue;
    const double t = std::clamp((ratio.values[i] - lo) / (hi - lo), 0.0, 1.0) * 4.0;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), 3);
    const double f = t - static_cast<double>(k);
    for (std::size_t c = 0; c < 3; ++c) {
      out.plane(c)[i] = kStops[k][c] + (kStops[k + 1][c] - kStops[k][c]) * f;
    }
  }
  return out;
}

}  // namespace rle::spectral
