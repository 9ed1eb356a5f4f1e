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

// Moderate transformations: convex mixes of the R, G and B planes. Every
// output keeps the linear correlation of the source within a material
// because the same weights apply at every pixel.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/core/random.hpp"

namespace rle {

/// Channel mixing coefficients on the probability simplex.
struct MixWeights {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  static constexpr double kSumTolerance = 1e-9;

  double sum() const noexcept { return r + g + b; }

  void validate() const {
    for (const double w : {r, g, b}) {
      if (!(w >= 0.0 && w <= 1.0)) {
        throw ParameterError("mix weight " + std::to_string(w) + " outside [0, 1]");
      }
    }
    if (std::abs(sum() - 1.0) > kSumTolerance) {
      throw ParameterError("mix weights sum to " + std::to_string(sum()) + ", expected 1");
    }
  }

  friend bool operator==(const MixWeights&, const MixWeights&) = default;
};

inline constexpr MixWeights kGrayscaleWeights{0.299, 0.587, 0.114};

inline MixWeights one_hot_weights(std::size_t channel) {
  switch (channel) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {0.0, 1.0, 0.0};
    case 2: return {0.0, 0.0, 1.0};
    default: throw ParameterError("one-hot channel must be 0, 1 or 2");
  }
}

/// Projects non-negative raw draws onto the simplex by dividing by their sum.
/// Triples already summing to 1 (to 1e-12) are returned untouched.
inline MixWeights normalize_mix(double r, double g, double b) {
  const double s = r + g + b;
  if (!(s > 0.0)) throw ParameterError("cannot normalize mix weights with non-positive sum");
  if (std::abs(s - 1.0) <= 1e-12) return {r, g, b};
  return {r / s, g / s, b / s};
}

/// I = w_r * R + w_g * G + w_b * B, evaluated per pixel.
template <std::floating_point T>
ImageTensor<T> moderate_transform(const ImageTensor<T>& img, const MixWeights& weights) {
  if (img.channels() != 3) {
    throw ShapeError("moderate transform needs a 3-channel image, got " +
                     std::to_string(img.channels()));
  }
  weights.validate();
  const T wr = static_cast<T>(weights.r);
  const T wg = static_cast<T>(weights.g);
  const T wb = static_cast<T>(weights.b);
  const auto red = img.plane(0);
  const auto green = img.plane(1);
  const auto blue = img.plane(2);
  ImageTensor<T> out(1, img.height(), img.width());
  auto dst = out.plane(0);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    // Weights sum to 1 only up to rounding; keep white at most 1.
    dst[i] = std::min(wr * red[i] + wg * green[i] + wb * blue[i], T{1});
  }
  return out;
}

/// Three i.i.d. Beta(beta_m, beta_m) draws normalized onto the simplex.
inline MixWeights sample_mix_weights(const BetaShape& beta_m, SeededRng& rng) {
  for (;;) {
    const double r = beta_sample(beta_m, rng);
    const double g = beta_sample(beta_m, rng);
    const double b = beta_sample(beta_m, rng);
    if (r + g + b >= 1e-12) return normalize_mix(r, g, b);
  }
}

template <std::floating_point T>
ImageTensor<T> mrle(const ImageTensor<T>& img, const BetaShape& beta_m, SeededRng& rng) {
  if (img.channels() != 3) throw ShapeError("MRLE needs a 3-channel image");
  return moderate_transform(img, sample_mix_weights(beta_m, rng));
}

template <std::floating_point T>
ImageTensor<T> grayscale(const ImageTensor<T>& img) {
  return moderate_transform(img, kGrayscaleWeights);
}

inline std::size_t sample_channel_index(SeededRng& rng) {
  return static_cast<std::size_t>(rng.uniform_index(3));
}

template <std::floating_point T>
ImageTensor<T> random_channel(const ImageTensor<T>& img, SeededRng& rng) {
  if (img.channels() != 3) throw ShapeError("random channel selection needs a 3-channel image");
  return moderate_transform(img, one_hot_weights(sample_channel_index(rng)));
}

/// Replicates a mono plane into three identical channels.
template <std::floating_point T>
ImageTensor<T> broadcast_mono(const ImageTensor<T>& img) {
  if (img.channels() != 1) {
    throw ShapeError("broadcast needs a 1-channel image, got " + std::to_string(img.channels()));
  }
  ImageTensor<T> out(3, img.height(), img.width());
  const auto src = img.plane(0);
  for (std::size_t c = 0; c < 3; ++c) std::ranges::copy(src, out.plane(c).begin());
  return out;
}

}  // namespace rle
