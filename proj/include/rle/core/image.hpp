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
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rle/core/error.hpp"

namespace rle {

/// Planar C x H x W raster of unit-interval values. C is 1 (infrared, mono)
/// or 3 (visible RGB). Shape invariants are enforced on construction; the
/// value range is checked by validate_image().
template <std::floating_point T>
class ImageTensor {
 public:
  using value_type = T;

  ImageTensor() = default;

  ImageTensor(std::size_t channels, std::size_t height, std::size_t width, T fill = T{0})
      : channels_(channels), height_(height), width_(width) {
    check_shape();
    data_.assign(channels * height * width, fill);
  }

  ImageTensor(std::size_t channels, std::size_t height, std::size_t width, std::vector<T> data)
      : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
    check_shape();
    if (data_.size() != channels_ * height_ * width_) {
      throw ShapeError("image data holds " + std::to_string(data_.size()) + " values, expected " +
                       std::to_string(channels_ * height_ * width_));
    }
  }

  std::size_t channels() const noexcept { return channels_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept { return height_ * width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  std::span<T> plane(std::size_t c) noexcept { return {data_.data() + c * plane_size(), plane_size()}; }
  std::span<const T> plane(std::size_t c) const noexcept {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  T& operator()(std::size_t c, std::size_t y, std::size_t x) noexcept {
    return data_[(c * height_ + y) * width_ + x];
  }
  T operator()(std::size_t c, std::size_t y, std::size_t x) const noexcept {
    return data_[(c * height_ + y) * width_ + x];
  }

  bool same_shape(const ImageTensor& other) const noexcept {
    return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  void check_shape() const {
    if (channels_ != 1 && channels_ != 3) {
      throw ShapeError("image must have 1 or 3 channels, got " + std::to_string(channels_));
    }
    if (height_ == 0 || width_ == 0) throw ShapeError("image height and width must be >= 1");
  }

  std::size_t channels_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> data_;
};

using Image = ImageTensor<double>;

/// Integer rectangle; (x, y) is the top-left corner.
struct RectRegion {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t w = 0;
  std::size_t h = 0;

  std::size_t area() const noexcept { return w * h; }

  bool fits(std::size_t width, std::size_t height) const noexcept {
    return w >= 1 && h >= 1 && x + w <= width && y + h <= height;
  }

  friend bool operator==(const RectRegion&, const RectRegion&) = default;
};

template <std::floating_point T>
void require_bound(const RectRegion& region, const ImageTensor<T>& img) {
  if (!region.fits(img.width(), img.height())) {
    throw ShapeError("region (" + std::to_string(region.x) + "," + std::to_string(region.y) + "," +
                     std::to_string(region.w) + "x" + std::to_string(region.h) +
                     ") does not lie inside a " + std::to_string(img.width()) + "x" +
                     std::to_string(img.height()) + " image");
  }
}

/// First out-of-range value found by validate_image().
struct RangeViolation {
  std::size_t index = 0;
  double value = 0.0;
};

/// Returns nullopt when every value lies in [0, 1]; NaN counts as a violation.
template <std::floating_point T>
std::optional<RangeViolation> validate_image(const ImageTensor<T>& img) {
  const auto data = img.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const T v = data[i];
    if (!(v >= T{0} && v <= T{1})) return RangeViolation{i, static_cast<double>(v)};
  }
  return std::nullopt;
}

template <std::floating_point T>
void require_valid(const ImageTensor<T>& img) {
  if (auto bad = validate_image(img)) {
    throw ParameterError("image value " + std::to_string(bad->value) + " at index " +
                         std::to_string(bad->index) + " is outside [0, 1]");
  }
}

/// Copy of one channel as a single-channel image.
template <std::floating_point T>
ImageTensor<T> extract_channel(const ImageTensor<T>& img, std::size_t channel) {
  if (channel >= img.channels()) {
    throw ShapeError("channel " + std::to_string(channel) + " out of range");
  }
  const auto src = img.plane(channel);
  return ImageTensor<T>(1, img.height(), img.width(), std::vector<T>(src.begin(), src.end()));
}

}  // namespace rle
