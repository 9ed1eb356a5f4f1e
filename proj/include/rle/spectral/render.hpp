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
#include <cstddef>
#include <string>
#include <vector>

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/spectral/scene.hpp"

namespace rle::spectral {

/// Rectangle-rule integral sum_i F(l_i) S(l_i) Q(l_i) * step over the grid.
inline double band_material_integral(const WavelengthGrid& grid, const Band& band,
                                     const SpectralCurve& reflectance) {
  if (band.spd.samples.size() != grid.count || band.sensitivity.samples.size() != grid.count ||
      reflectance.samples.size() != grid.count) {
    throw ShapeError("spectral curves do not share the scene wavelength grid");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i) {
    sum += band.spd.samples[i] * reflectance.samples[i] * band.sensitivity.samples[i];
  }
  return sum * grid.step_nm;
}

/// Unnormalized sensor response of one band:
/// shading(x, y) * incident_ratio * omega * integral(material(x, y)).
inline std::vector<double> raw_band_response(const SceneSpec& scene, std::size_t band) {
  scene.validate();
  if (band >= scene.bands.size()) throw ParameterError("band index out of range");
  const Band& b = scene.bands[band];
  std::vector<double> per_material(scene.materials.size());
  for (std::size_t m = 0; m < scene.materials.size(); ++m) {
    per_material[m] = scene.incident_ratio * b.intensity *
                      band_material_integral(scene.grid, b, scene.materials[m].reflectance);
  }
  std::vector<double> out(scene.pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = scene.shading[i] * per_material[scene.material_map[i]];
  }
  return out;
}

/// Largest raw response over every band and pixel.
inline double max_raw_response(const SceneSpec& scene) {
  double m = 0.0;
  for (std::size_t b = 0; b < scene.bands.size(); ++b) {
    const auto raw = raw_band_response(scene, b);
    m = std::max(m, *std::ranges::max_element(raw));
  }
  return m;
}

namespace detail {

inline Image normalize_response(const SceneSpec& scene, std::vector<double> raw, double global_max) {
  if (scene.normalization) {
    const double k = *scene.normalization;
    for (double& v : raw) {
      v *= k;
      if (v > 1.0) {
        throw ParameterError("normalization " + std::to_string(k) + " pushes a rendered value above 1");
      }
    }
  } else if (global_max > 0.0) {
    // Division keeps the maximum at exactly 1.
    for (double& v : raw) v /= global_max;
  }
  return Image(1, scene.height, scene.width, std::move(raw));
}

}  // namespace detail

/// Renders one band as a single-channel image in [0, 1]. With an explicit
/// scene normalization k every value is raw * k; otherwise every band is
/// divided by the maximum raw response over all bands so that ratios between
/// bands survive normalization.
inline Image render_band(const SceneSpec& scene, std::size_t band) {
  auto raw = raw_band_response(scene, band);
  const double global_max = scene.normalization ? 0.0 : max_raw_response(scene);
  return detail::normalize_response(scene, std::move(raw), global_max);
}

inline std::vector<Image> render_all_bands(const SceneSpec& scene) {
  const double global_max = scene.normalization ? 0.0 : max_raw_response(scene);
  std::vector<Image> out;
  out.reserve(scene.bands.size());
  for (std::size_t b = 0; b < scene.bands.size(); ++b) {
    out.push_back(detail::normalize_response(scene, raw_band_response(scene, b), global_max));
  }
  return out;
}

/// Row-major mask of the pixels made of `material`.
inline std::vector<bool> material_mask(const SceneSpec& scene, std::size_t material) {
  std::vector<bool> mask(scene.pixel_count());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = scene.material_map[i] == material;
  return mask;
}

}  // namespace rle::spectral
