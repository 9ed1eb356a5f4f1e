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

// Horizontal-band linear factors: the desk-scale stand-in for materials that
// each receive their own cross-spectral scale, and the pixel statistics used
// to measure how far such a transform moves an image.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"

namespace rle::spectral {

/// Rows [floor(k H / n), floor((k + 1) H / n)) of band k.
inline std::pair<std::size_t, std::size_t> band_rows(std::size_t k, std::size_t n_bands, std::size_t height) {
  return {k * height / n_bands, (k + 1) * height / n_bands};
}

/// Per-band 1 / max over all channels, 1 for an all-zero band.
template <std::floating_point T>
std::vector<double> max_band_factors(const ImageTensor<T>& img, std::size_t n_bands) {
  if (n_bands == 0) throw ParameterError("n_bands must be >= 1");
  std::vector<double> out(n_bands, 1.0);
  for (std::size_t k = 0; k < n_bands; ++k) {
    const auto [r0, r1] = band_rows(k, n_bands, img.height());
    T m{0};
    for (std::size_t c = 0; c < img.channels(); ++c) {
      for (std::size_t y = r0; y < r1; ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) m = std::max(m, img(c, y, x));
      }
    }
    if (m > T{0}) out[k] = 1.0 / static_cast<double>(m);
  }
  return out;
}

/// Multiplies horizontal band k by factors[k] across all channels. Throws if
/// a factor is negative or would push a pixel above 1.
template <std::floating_point T>
ImageTensor<T> banded_linear_transform(const ImageTensor<T>& img, std::span<const double> factors,
                                       std::size_t n_bands) {
  if (n_bands == 0) throw ParameterError("n_bands must be >= 1");
  if (factors.size() != n_bands) {
    throw ParameterError("expected " + std::to_string(n_bands) + " factors, got " + std::to_string(factors.size()));
  }
  ImageTensor<T> out = img;
  for (std::size_t k = 0; k < n_bands; ++k) {
    if (!(factors[k] >= 0.0) || !std::isfinite(factors[k])) {
      throw ParameterError("band factor " + std::to_string(k) + " must be non-negative");
    }
    const T f = static_cast<T>(factors[k]);
    const auto [r0, r1] = band_rows(k, n_bands, img.height());
    for (std::size_t c = 0; c < img.channels(); ++c) {
      for (std::size_t y = r0; y < r1; ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
          T& px = out(c, y, x);
          px *= f;
          if (px > T{1}) {
            throw ParameterError("band factor " + std::to_string(factors[k]) + " pushes band " +
                                 std::to_string(k) + " above 1");
          }
        }
      }
    }
  }
  return out;
}

/// Least-squares fit target ~ scale * reference over all values.
struct ScalarFit {
  double scale = 0.0;
  double residual = 0.0;  // sum of squared errors at the optimum
};

template <std::floating_point T>
ScalarFit global_scalar_fit(const ImageTensor<T>& reference, const ImageTensor<T>& target) {
  if (!reference.same_shape(target)) throw ShapeError("scalar fit needs images of the same shape");
  const auto a = reference.data();
  const auto b = target.data();
  double ab = 0.0;
  double aa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    aa += static_cast<double>(a[i]) * static_cast<double>(a[i]);
  }
  ScalarFit fit;
  fit.scale = aa > 0.0 ? ab / aa : 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = static_cast<double>(b[i]) - fit.scale * static_cast<double>(a[i]);
    fit.residual += e * e;
  }
  return fit;
}

struct PixelDiscrepancy {
  double mean_abs_diff = 0.0;
  double histogram_distance = 0.0;  // in [0, 2]
};

inline constexpr std::size_t kHistogramBins = 64;

template <std::floating_point T>
std::array<double, kHistogramBins> value_histogram(std::span<const T> plane) {
  std::array<double, kHistogramBins> h{};
  for (const T v : plane) {
    const auto bin = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(static_cast<double>(v), 0.0) * kHistogramBins), kHistogramBins - 1);
    h[bin] += 1.0;
  }
  for (double& x : h) x /= static_cast<double>(plane.size());
  return h;
}

/// Mean |a - b| and the channel-averaged L1 distance between normalized
/// 64-bin value histograms.
template <std::floating_point T>
PixelDiscrepancy pixel_discrepancy(const ImageTensor<T>& a, const ImageTensor<T>& b) {
  if (!a.same_shape(b)) throw ShapeError("pixel discrepancy needs images of the same shape");
  PixelDiscrepancy d;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) d.mean_abs_diff += std::abs(static_cast<double>(da[i] - db[i]));
  d.mean_abs_diff /= static_cast<double>(da.size());
  for (std::size_t c = 0; c < a.channels(); ++c) {
    const auto ha = value_histogram(a.plane(c));
    const auto hb = value_histogram(b.plane(c));
    double l1 = 0.0;
    for (std::size_t k = 0; k < kHistogramBins; ++k) l1 += std::abs(ha[k] - hb[k]);
    d.histogram_distance += l1;
  }
  d.histogram_distance /= static_cast<double>(a.channels());
  return d;
}

}  // namespace rle::spectral
