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
#include <cstddef>
#include <optional>
#include <string>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/core/random.hpp"

namespace rle {

/// Area-fraction and aspect-ratio bounds for rectangle sampling. Defaults are
/// the usual random-erasing settings.
struct RectBounds {
  double s_min = 0.02;
  double s_max = 0.4;
  double r_min = 0.3;
  double r_max = 3.33;

  void validate(const std::string& prefix = "") const {
    if (!(s_min > 0.0 && s_min <= s_max && s_max <= 1.0)) {
      throw ParameterError(prefix + "area bounds need 0 < s_min <= s_max <= 1");
    }
    if (!(r_min > 0.0 && r_min <= r_max && std::isfinite(r_max))) {
      throw ParameterError(prefix + "aspect bounds need 0 < r_min <= r_max");
    }
  }

  friend bool operator==(const RectBounds&, const RectBounds&) = default;
};

inline constexpr std::size_t kDefaultRectAttempts = 100;

/// Samples a rectangle of area u*W*H (u ~ U[s_min, s_max]) and aspect h/w ~
/// U[r_min, r_max], placed uniformly among the positions where it fits.
/// Attempts whose rounded size is zero or larger than the image are misses;
/// returns nullopt after `max_attempts` misses.
inline std::optional<RectRegion> sample_rect(std::size_t width, std::size_t height,
                                             const RectBounds& bounds, std::size_t max_attempts,
                                             SeededRng& rng) {
  bounds.validate();
  if (width == 0 || height == 0) throw ParameterError("sample_rect needs a non-empty image");
  const double image_area = static_cast<double>(width) * static_cast<double>(height);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const double target_area = rng.uniform(bounds.s_min, bounds.s_max) * image_area;
    const double aspect = rng.uniform(bounds.r_min, bounds.r_max);
    const auto h = static_cast<std::size_t>(std::lround(std::sqrt(target_area * aspect)));
    const auto w = static_cast<std::size_t>(std::lround(std::sqrt(target_area / aspect)));
    if (w < 1 || h < 1 || w > width || h > height) continue;
    const auto x = static_cast<std::size_t>(rng.uniform_index(width - w + 1));
    const auto y = static_cast<std::size_t>(rng.uniform_index(height - h + 1));
    return RectRegion{x, y, w, h};
  }
  return std::nullopt;
}

}  // namespace rle
