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
#include <vector>

#include "rle/core/error.hpp"

namespace rle::spectral {

/// Uniform wavelength grid in nanometres: start, start + step, ...
struct WavelengthGrid {
  double start_nm = 400.0;
  double step_nm = 10.0;
  std::size_t count = 61;  // 400..1000 nm

  double at(std::size_t i) const noexcept { return start_nm + step_nm * static_cast<double>(i); }

  friend bool operator==(const WavelengthGrid&, const WavelengthGrid&) = default;
};

/// Non-negative function of wavelength tabulated on a WavelengthGrid.
struct SpectralCurve {
  std::vector<double> samples;

  void validate(const WavelengthGrid& grid, const std::string& what) const {
    if (samples.size() != grid.count) {
      throw ShapeError(what + " has " + std::to_string(samples.size()) +
                       " samples but the wavelength grid has " + std::to_string(grid.count));
    }
    for (const double v : samples) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(what + " has a negative or non-finite sample");
    }
  }

  static SpectralCurve constant(const WavelengthGrid& grid, double value) {
    return {std::vector<double>(grid.count, value)};
  }
};

struct Material {
  std::string name;
  SpectralCurve reflectance;
};

/// One sensor channel: relative light SPD F, sensor sensitivity Q and the
/// band intensity omega.
struct Band {
  std::string name;
  SpectralCurve spd;
  SpectralCurve sensitivity;
  double intensity = 1.0;
};

/// Discretized Lambertian scene. The incident-light ratio is one constant for
/// the whole scene.
struct SceneSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  WavelengthGrid grid{};
  std::vector<Material> materials;
  std::vector<std::size_t> material_map;  // row-major, width * height
  std::vector<Band> bands;
  std::vector<double> shading;            // row-major, width * height
  double incident_ratio = 1.0;
  std::optional<double> normalization;    // multiplier; unset = divide by the global max

  std::size_t pixel_count() const noexcept { return width * height; }

  std::size_t band_index(const std::string& name) const {
    for (std::size_t i = 0; i < bands.size(); ++i) {
      if (bands[i].name == name) return i;
    }
    throw ParameterError("scene has no band named '" + name + "'");
  }

  void validate() const {
    if (width == 0 || height == 0) throw ShapeError("scene dimensions must be >= 1");
    if (grid.count < 2) throw ShapeError("wavelength grid needs at least 2 samples");
    if (!(grid.step_nm > 0.0)) throw ParameterError("wavelength step must be positive");
    if (materials.empty()) throw ParameterError("scene needs at least one material");
    if (bands.empty()) throw ParameterError("scene needs at least one band");
    if (material_map.size() != pixel_count()) throw ShapeError("material map size does not match the scene");
    if (shading.size() != pixel_count()) throw ShapeError("shading field size does not match the scene");
    for (const auto& m : materials) m.reflectance.validate(grid, "material '" + m.name + "' reflectance");
    for (const auto& b : bands) {
      b.spd.validate(grid, "band '" + b.name + "' spd");
      b.sensitivity.validate(grid, "band '" + b.name + "' sensitivity");
      if (!(b.intensity > 0.0) || !std::isfinite(b.intensity)) {
        throw ParameterError("band '" + b.name + "' intensity must be positive");
      }
    }
    for (const std::size_t idx : material_map) {
      if (idx >= materials.size()) throw ParameterError("material map references material " + std::to_string(idx));
    }
    for (const double s : shading) {
      if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("shading must be non-negative and finite");
    }
    if (!(incident_ratio > 0.0) || !std::isfinite(incident_ratio)) {
      throw ParameterError("incident ratio must be positive");
    }
    if (normalization && !(*normalization > 0.0)) throw ParameterError("normalization must be positive");
  }
};

}  // namespace rle::spectral
