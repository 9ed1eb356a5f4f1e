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

// JSON scene files. Schema:
//
//   {
//     "width": 64, "height": 96,
//     "wavelengths": {"start": 400, "step": 10, "count": 61},   // optional
//     "incident_ratio": 1.0,                                     // optional
//     "normalization": 0.01,                                     // optional
//     "materials": [{"name": "wall", "reflectance": <curve>}, ...],
//     "background": "wall",                                      // optional, default material 0
//     "regions": [{"material": "skin", "rect": [x, y, w, h]},
//                 {"material": 2, "polygon": [[x, y], ...]}],    // later entries win
//     "bands": [{"name": "N", "spd": <curve>, "sensitivity": <curve>, "intensity": 1.0}],
//     "shading": <shading>                                       // optional, default 1
//   }
//
// <curve> is an array of grid samples or one of
//   {"constant": v}
//   {"linear": {"from": a, "to": b}}
//   {"gaussian": {"center": nm, "width": nm, "peak": v}}
//   {"step": {"at": nm, "below": a, "above": b}}
//
// <shading> is a number, an array of width * height values, or one of
//   {"gradient": {"axis": "x" | "y", "from": a, "to": b}}
//   {"radial": {"center": [x, y], "inner": a, "outer": b}}

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rle/core/error.hpp"
#include "rle/spectral/scene.hpp"

namespace rle::spectral {

namespace detail {

using nlohmann::json;

inline double number_at(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(where + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

inline SpectralCurve parse_curve(const json& j, const WavelengthGrid& grid, const std::string& where) {
  SpectralCurve curve;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ParseError(where + ": curve samples must be numbers");
      curve.samples.push_back(v.get<double>());
    }
    return curve;
  }
  if (!j.is_object() || j.size() != 1) throw ParseError(where + ": expected a sample array or one curve form");
  curve.samples.resize(grid.count);
  const auto& [kind, body] = *j.items().begin();
  if (kind == "constant") {
    if (!body.is_number()) throw ParseError(where + ".constant: expected a number");
    std::fill(curve.samples.begin(), curve.samples.end(), body.get<double>());
  } else if (kind == "linear") {
    const double a = number_at(body, "from", where + ".linear");
    const double b = number_at(body, "to", where + ".linear");
    for (std::size_t i = 0; i < grid.count; ++i) {
      curve.samples[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(grid.count - 1);
    }
  } else if (kind == "gaussian") {
    const double center = number_at(body, "center", where + ".gaussian");
    const double width = number_at(body, "width", where + ".gaussian");
    const double peak = body.contains("peak") ? number_at(body, "peak", where + ".gaussian") : 1.0;
    if (!(width > 0.0)) throw ParseError(where + ".gaussian.width: must be positive");
    for (std::size_t i = 0; i < grid.count; ++i) {
      const double z = (grid.at(i) - center) / width;
      curve.samples[i] = peak * std::exp(-0.5 * z * z);
    }
  } else if (kind == "step") {
    const double at = number_at(body, "at", where + ".step");
    const double below = number_at(body, "below", where + ".step");
    const double above = number_at(body, "above", where + ".step");
    for (std::size_t i = 0; i < grid.count; ++i) curve.samples[i] = grid.at(i) < at ? below : above;
  } else {
    throw ParseError(where + ": unknown curve form '" + kind + "'");
  }
  return curve;
}

inline std::size_t material_ref(const json& j, const std::vector<Material>& materials, const std::string& where) {
  if (j.is_number_unsigned()) {
    const auto idx = j.get<std::size_t>();
    if (idx >= materials.size()) throw ParseError(where + ": material index out of range");
    return idx;
  }
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    for (std::size_t i = 0; i < materials.size(); ++i) {
      if (materials[i].name == name) return i;
    }
    throw ParseError(where + ": unknown material '" + name + "'");
  }
  throw ParseError(where + ": expected a material name or index");
}

// Even-odd rule at the pixel centre.
inline bool inside_polygon(const std::vector<std::pair<double, double>>& poly, double px, double py) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto [xi, yi] = poly[i];
    const auto [xj, yj] = poly[j];
    if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi) inside = !inside;
  }
  return inside;
}

inline void paint_region(SceneSpec& scene, const json& region, std::size_t idx) {
  const std::string where = "regions[" + std::to_string(idx) + "]";
  if (!region.is_object() || !region.contains("material")) throw ParseError(where + ": expected an object with 'material'");
  const std::size_t mat = material_ref(region.at("material"), scene.materials, where + ".material");
  if (region.contains("rect")) {
    const auto& r = region.at("rect");
    if (!r.is_array() || r.size() != 4) throw ParseError(where + ".rect: expected [x, y, w, h]");
    const auto x0 = r[0].get<long long>(), y0 = r[1].get<long long>();
    const auto w = r[2].get<long long>(), h = r[3].get<long long>();
    for (long long y = std::max(0LL, y0); y < std::min<long long>(y0 + h, scene.height); ++y) {
      for (long long x = std::max(0LL, x0); x < std::min<long long>(x0 + w, scene.width); ++x) {
        scene.material_map[static_cast<std::size_t>(y) * scene.width + static_cast<std::size_t>(x)] = mat;
      }
    }
  } else if (region.contains("polygon")) {
    std::vector<std::pair<double, double>> poly;
    for (const auto& p : region.at("polygon")) {
      if (!p.is_array() || p.size() != 2) throw ParseError(where + ".polygon: expected [x, y] points");
      poly.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    if (poly.size() < 3) throw ParseError(where + ".polygon: needs at least 3 points");
    for (std::size_t y = 0; y < scene.height; ++y) {
      for (std::size_t x = 0; x < scene.width; ++x) {
        if (inside_polygon(poly, static_cast<double>(x) + 0.5, static_cast<double>(y) + 0.5)) {
          scene.material_map[y * scene.width + x] = mat;
        }
      }
    }
  } else {
    throw ParseError(where + ": needs 'rect' or 'polygon'");
  }
}

inline void parse_shading(SceneSpec& scene, const json& j) {
  auto& s = scene.shading;
  s.assign(scene.pixel_count(), 1.0);
  if (j.is_number()) {
    std::fill(s.begin(), s.end(), j.get<double>());
  } else if (j.is_array()) {
    if (j.size() != scene.pixel_count()) throw ParseError("shading: array must hold width * height values");
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = j[i].get<double>();
  } else if (j.is_object() && j.contains("gradient")) {
    const auto& g = j.at("gradient");
    const double a = number_at(g, "from", "shading.gradient");
    const double b = number_at(g, "to", "shading.gradient");
    const bool along_x = g.value("axis", std::string("y")) == "x";
    for (std::size_t y = 0; y < scene.height; ++y) {
      for (std::size_t x = 0; x < scene.width; ++x) {
        const double n = along_x ? static_cast<double>(x) / std::max<double>(1.0, scene.width - 1.0)
                                 : static_cast<double>(y) / std::max<double>(1.0, scene.height - 1.0);
        s[y * scene.width + x] = a + (b - a) * n;
      }
    }
  } else if (j.is_object() && j.contains("radial")) {
    const auto& r = j.at("radial");
    const double inner = number_at(r, "inner", "shading.radial");
    const double outer = number_at(r, "outer", "shading.radial");
    double cx = 0.5 * static_cast<double>(scene.width), cy = 0.5 * static_cast<double>(scene.height);
    if (r.contains("center")) {
      cx = r.at("center")[0].get<double>();
      cy = r.at("center")[1].get<double>();
    }
    const double reach = std::hypot(std::max(cx, scene.width - cx), std::max(cy, scene.height - cy));
    for (std::size_t y = 0; y < scene.height; ++y) {
      for (std::size_t x = 0; x < scene.width; ++x) {
        const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy) / reach;
        s[y * scene.width + x] = inner + (outer - inner) * std::min(d, 1.0);
      }
    }
  } else {
    throw ParseError("shading: expected a number, an array, 'gradient' or 'radial'");
  }
}

}  // namespace detail

/// Parses and validates a scene description.
inline SceneSpec parse_scene(const std::string& text, const std::string& source = "scene") {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError(source + ": top level must be an object");
  SceneSpec scene;
  try {
    scene.width = root.at("width").get<std::size_t>();
    scene.height = root.at("height").get<std::size_t>();
    if (root.contains("wavelengths")) {
      const auto& w = root.at("wavelengths");
      scene.grid.start_nm = w.value("start", scene.grid.start_nm);
      scene.grid.step_nm = w.value("step", scene.grid.step_nm);
      scene.grid.count = w.value("count", scene.grid.count);
    }
    if (scene.grid.count < 2) throw ParseError(source + ": wavelengths.count must be >= 2");
    scene.incident_ratio = root.value("incident_ratio", 1.0);
    if (root.contains("normalization") && !root.at("normalization").is_null()) {
      scene.normalization = root.at("normalization").get<double>();
    }
    const auto& mats = root.at("materials");
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const std::string where = "materials[" + std::to_string(i) + "]";
      scene.materials.push_back({mats[i].value("name", "material" + std::to_string(i)),
                                 detail::parse_curve(mats[i].at("reflectance"), scene.grid, where + ".reflectance")});
    }
    if (scene.materials.empty()) throw ParseError(source + ": materials must not be empty");
    const std::size_t background =
        root.contains("background") ? detail::material_ref(root.at("background"), scene.materials, "background") : 0;
    scene.material_map.assign(scene.pixel_count(), background);
    if (root.contains("regions")) {
      const auto& regions = root.at("regions");
      for (std::size_t i = 0; i < regions.size(); ++i) detail::paint_region(scene, regions[i], i);
    }
    const auto& bands = root.at("bands");
    for (std::size_t i = 0; i < bands.size(); ++i) {
      const std::string where = "bands[" + std::to_string(i) + "]";
      Band b;
      b.name = bands[i].value("name", "band" + std::to_string(i));
      b.spd = bands[i].contains("spd") ? detail::parse_curve(bands[i].at("spd"), scene.grid, where + ".spd")
                                       : SpectralCurve::constant(scene.grid, 1.0);
      b.sensitivity = detail::parse_curve(bands[i].at("sensitivity"), scene.grid, where + ".sensitivity");
      b.intensity = bands[i].value("intensity", 1.0);
      scene.bands.push_back(std::move(b));
    }
    detail::parse_shading(scene, root.contains("shading") ? root.at("shading") : json(1.0));
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  scene.validate();
  return scene;
}

inline SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene(text.str(), path.string());
}

}  // namespace rle::spectral
