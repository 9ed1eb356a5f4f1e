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

// Radical transformations: random rectangles scaled per channel by bounded
// random linear factors. A memory matrix records the product of all factors
// applied to each cell and drives termination.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/core/random.hpp"
#include "rle/core/rect.hpp"

namespace rle {

/// Per-cell product of the linear factors applied so far, shaped like the
/// image it tracks. Starts at 1 everywhere.
template <std::floating_point T>
class MemoryMatrix {
 public:
  MemoryMatrix(std::size_t channels, std::size_t height, std::size_t width)
      : channels_(channels), height_(height), width_(width), data_(channels * height * width, T{1}) {}

  template <std::floating_point U>
  static MemoryMatrix like(const ImageTensor<U>& img) {
    return MemoryMatrix(img.channels(), img.height(), img.width());
  }

  std::size_t channels() const noexcept { return channels_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const T> data() const noexcept { return data_; }

  T& operator()(std::size_t c, std::size_t y, std::size_t x) noexcept {
    return data_[(c * height_ + y) * width_ + x];
  }
  T operator()(std::size_t c, std::size_t y, std::size_t x) const noexcept {
    return data_[(c * height_ + y) * width_ + x];
  }

  T min() const noexcept { return *std::ranges::min_element(data_); }

  template <std::floating_point U>
  bool matches(const ImageTensor<U>& img) const noexcept {
    return channels_ == img.channels() && height_ == img.height() && width_ == img.width();
  }

 private:
  std::size_t channels_;
  std::size_t height_;
  std::size_t width_;
  std::vector<T> data_;
};

struct RrleParams {
  double probability = 0.5;
  RectBounds bounds{};
  BetaShape beta_r{0.4};
  double t_min = 0.1;
  std::size_t max_iters = 64;

  void validate() const {
    if (!(probability >= 0.0 && probability <= 1.0)) {
      throw ParameterError("rrle probability must lie in [0, 1]");
    }
    bounds.validate("rrle ");
    if (!(t_min > 0.0 && t_min < 1.0)) throw ParameterError("rrle t_min must lie in (0, 1)");
    if (max_iters < 1) throw ParameterError("rrle max_iters must be >= 1");
  }

  friend bool operator==(const RrleParams&, const RrleParams&) = default;
};

struct ErasingParams {
  double probability = 0.5;
  RectBounds bounds{};
  std::size_t max_attempts = kDefaultRectAttempts;

  void validate() const {
    if (!(probability >= 0.0 && probability <= 1.0)) {
      throw ParameterError("erasing probability must lie in [0, 1]");
    }
    bounds.validate("erasing ");
    if (max_attempts < 1) throw ParameterError("erasing max_attempts must be >= 1");
  }

  friend bool operator==(const ErasingParams&, const ErasingParams&) = default;
};

namespace detail {

template <std::floating_point T>
T region_max(const ImageTensor<T>& img, const RectRegion& region, std::size_t channel) {
  T m{0};
  for (std::size_t y = region.y; y < region.y + region.h; ++y) {
    for (std::size_t x = region.x; x < region.x + region.w; ++x) m = std::max(m, img(channel, y, x));
  }
  return m;
}

// Scales one channel of the region in both img and mem and reports whether
// any touched memory cell ended at or below `t_min`.
template <std::floating_point T, std::floating_point M>
bool scale_region(ImageTensor<T>& img, MemoryMatrix<M>& mem, const RectRegion& region,
                  std::size_t channel, double factor, double t_min) {
  const T alpha = static_cast<T>(factor);
  const M alpha_mem = static_cast<M>(factor);
  bool reached = false;
  for (std::size_t y = region.y; y < region.y + region.h; ++y) {
    for (std::size_t x = region.x; x < region.x + region.w; ++x) {
      T& px = img(channel, y, x);
      // alpha <= 1 / max up to one rounding of the reciprocal.
      px = std::min(px * alpha, T{1});
      M& cell = mem(channel, y, x);
      cell *= alpha_mem;
      reached = reached || cell <= static_cast<M>(t_min);
    }
  }
  return reached;
}

}  // namespace detail

/// Largest factor keeping the channel's region at or below 1: 1 / max.
/// An all-zero region returns 1, since scaling zeros changes nothing.
template <std::floating_point T>
double max_feasible_factor(const ImageTensor<T>& img, const RectRegion& region, std::size_t channel) {
  require_bound(region, img);
  if (channel >= img.channels()) throw ShapeError("channel index out of range");
  const T m = detail::region_max(img, region, channel);
  return m > T{0} ? 1.0 / static_cast<double>(m) : 1.0;
}

/// Multiplies channel c of `region` by factors[c] in both the image and the
/// memory matrix. Each factor must be non-negative and feasible.
template <std::floating_point T, std::floating_point M>
void apply_linear_region(ImageTensor<T>& img, MemoryMatrix<M>& mem, const RectRegion& region,
                         std::span<const double> factors) {
  require_bound(region, img);
  if (!mem.matches(img)) throw ShapeError("memory matrix shape does not match the image");
  if (factors.size() != img.channels()) {
    throw ShapeError("expected " + std::to_string(img.channels()) + " factors, got " +
                     std::to_string(factors.size()));
  }
  for (std::size_t c = 0; c < factors.size(); ++c) {
    const double limit = max_feasible_factor(img, region, c);
    if (!(factors[c] >= 0.0) || factors[c] > limit) {
      throw ParameterError("factor " + std::to_string(factors[c]) + " for channel " +
                           std::to_string(c) + " exceeds the feasible bound " +
                           std::to_string(limit));
    }
  }
  for (std::size_t c = 0; c < factors.size(); ++c) {
    detail::scale_region(img, mem, region, c, factors[c], 0.0);
  }
}

/// Source of the random part f_g of each linear factor.
template <typename F>
concept FactorSource = requires(F f, SeededRng& rng) {
  { f(rng) } -> std::convertible_to<double>;
};

struct BetaFactor {
  BetaShape shape;
  double operator()(SeededRng& rng) const { return beta_sample(shape, rng); }
};

template <std::floating_point T>
struct RrleResult {
  ImageTensor<T> image;
  MemoryMatrix<double> memory;
  bool applied = false;            // passed the probability gate
  std::size_t attempts = 0;        // rectangle draws, misses included
  std::vector<RectRegion> regions; // rectangles actually transformed
  bool capped = false;             // stopped by max_iters rather than t_min
};

/// RRLE with full instrumentation. With probability 1 - p the input is
/// returned unchanged. Otherwise rectangles are drawn one attempt at a time;
/// each fitting rectangle has every channel c scaled by
/// f_c / max(region, c), f_c from `factor`. The loop ends once the memory
/// minimum is <= t_min or after max_iters attempts.
template <std::floating_point T, FactorSource Source>
RrleResult<T> rrle_traced(const ImageTensor<T>& img, const RrleParams& params, SeededRng& rng,
                          Source&& factor) {
  params.validate();
  RrleResult<T> result{img, MemoryMatrix<double>::like(img), false, 0, {}, false};
  if (rng.uniform01() >= params.probability) return result;
  result.applied = true;

  ImageTensor<T>& work = result.image;
  while (result.attempts < params.max_iters) {
    ++result.attempts;
    const auto region = sample_rect(work.width(), work.height(), params.bounds, 1, rng);
    if (!region) continue;  // miss: min(mem) is unchanged and still above t_min
    result.regions.push_back(*region);
    bool reached = false;
    for (std::size_t c = 0; c < work.channels(); ++c) {
      const double f = static_cast<double>(factor(rng));
      const T m = detail::region_max(work, *region, c);
      if (m <= T{0}) continue;
      const double alpha = (1.0 / static_cast<double>(m)) * f;
      reached = detail::scale_region(work, result.memory, *region, c, alpha, params.t_min) || reached;
    }
    // Cells outside the region were above t_min before this step, so the
    // global minimum reaches t_min only through the region.
    if (reached) return result;
  }
  result.capped = true;
  return result;
}

template <std::floating_point T>
RrleResult<T> rrle_traced(const ImageTensor<T>& img, const RrleParams& params, SeededRng& rng) {
  return rrle_traced(img, params, rng, BetaFactor{params.beta_r});
}

template <std::floating_point T>
ImageTensor<T> rrle(const ImageTensor<T>& img, const RrleParams& params, SeededRng& rng) {
  return std::move(rrle_traced(img, params, rng).image);
}

template <std::floating_point T>
void erase_region(ImageTensor<T>& img, const RectRegion& region) {
  require_bound(region, img);
  for (std::size_t c = 0; c < img.channels(); ++c) {
    for (std::size_t y = region.y; y < region.y + region.h; ++y) {
      std::fill_n(&img(c, y, region.x), region.w, T{0});
    }
  }
}

/// Random erasing with fill value 0: one sampled rectangle zeroed across all
/// channels with probability p.
template <std::floating_point T>
ImageTensor<T> random_erasing(const ImageTensor<T>& img, const ErasingParams& params, SeededRng& rng,
                              std::optional<RectRegion>* erased = nullptr) {
  params.validate();
  ImageTensor<T> out = img;
  if (erased) erased->reset();
  if (rng.uniform01() >= params.probability) return out;
  const auto region = sample_rect(img.width(), img.height(), params.bounds, params.max_attempts, rng);
  if (!region) return out;
  erase_region(out, *region);
  if (erased) *erased = region;
  return out;
}

}  // namespace rle
