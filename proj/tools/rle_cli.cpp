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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rle/pipeline/batch.hpp"
#include "rle/spectral/banded.hpp"
#include "rle/spectral/ratio.hpp"
#include "rle/spectral/render.hpp"
#include "rle/spectral/scene_io.hpp"

namespace fs = std::filesystem;
using namespace rle;
using namespace rle::pipeline;

namespace {

AugmentPolicy policy_from(const std::string& config, const std::optional<std::uint64_t>& seed) {
  AugmentPolicy p = config.empty() ? AugmentPolicy{} : load_policy(config);
  if (seed) p.master_seed = *seed;
  return p;
}

int cmd_augment(const std::string& input, const std::string& config, const std::string& out,
                std::optional<std::uint64_t> seed, std::size_t workers) {
  const AugmentPolicy policy = policy_from(config, seed);
  const InputSet inputs = collect_inputs(input);
  const RunReport report = run_batch(inputs, policy, out, workers);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w.path << ": " << w.message << "\n";
  for (const auto& e : report.errors) std::cerr << "error: " << e.path << ": " << e.message << "\n";
  std::cout << report_to_json(report).dump(2) << "\n";
  return 0;
}

Image load_band(const std::string& path, int channel) {
  Image img = read_image(path);
  if (img.channels() == 1) return img;
  if (channel < 0) {
    throw ParameterError(path + " has 3 channels; pick one with --num-channel/--den-channel");
  }
  return extract_channel(img, static_cast<std::size_t>(channel));
}

int cmd_analyze_ratio(const std::string& num_path, const std::string& den_path, int num_channel, int den_channel,
                      double eps, const std::string& mask_path, const std::string& out) {
  const Image num = load_band(num_path, num_channel);
  const Image den = load_band(den_path, den_channel);
  const auto map = spectral::band_ratio_map(num, den, eps);

  std::vector<bool> mask;
  if (!mask_path.empty()) {
    const Image m = read_image(mask_path);
    if (m.height() != num.height() || m.width() != num.width()) throw ShapeError("mask size differs from the bands");
    mask.resize(m.plane_size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = m.plane(0)[i] > 0.5;
  }
  const auto stats = spectral::ratio_constancy_stats(map, mask);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    if (!map.defined[i]) continue;
    lo = first ? map.values[i] : std::min(lo, map.values[i]);
    hi = first ? map.values[i] : std::max(hi, map.values[i]);
    first = false;
  }
  if (!(hi > lo)) hi = lo + 1.0;

  const fs::path png = out;
  if (png.has_parent_path()) fs::create_directories(png.parent_path());
  write_png(png, spectral::ratio_false_color(map, lo, hi));
  fs::path csv = png;
  csv.replace_extension(".csv");
  std::ofstream sidecar(csv);
  if (!sidecar) throw IoError("cannot write " + csv.string());
  sidecar.precision(17);
  sidecar << "x,y,ratio\n";
  for (std::size_t y = 0; y < map.height; ++y) {
    for (std::size_t x = 0; x < map.width; ++x) {
      const std::size_t i = y * map.width + x;
      sidecar << x << ',' << y << ',';
      if (map.defined[i]) sidecar << map.values[i];
      sidecar << '\n';
    }
  }

  nlohmann::json j = {{"mean", stats.mean},
                      {"stddev", stats.stddev},
                      {"coefficient_of_variation", stats.coefficient_of_variation},
                      {"count", stats.count},
                      {"undefined", map.values.size() - map.defined_count()},
                      {"range", {lo, hi}},
                      {"image", png.string()},
                      {"csv", csv.string()}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_render_scene(const std::string& scene_path, const std::string& out) {
  const auto scene = spectral::load_scene(scene_path);
  const auto bands = spectral::render_all_bands(scene);
  fs::create_directories(out);
  nlohmann::json written = nlohmann::json::array();
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const fs::path p = fs::path(out) / ("band_" + scene.bands[b].name + ".png");
    write_png(p, bands[b]);
    written.push_back(p.string());
  }
  std::vector<std::uint8_t> labels(scene.pixel_count());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::uint8_t>(scene.material_map[i]);
  std::ofstream map_file(fs::path(out) / "materials.json");
  nlohmann::json names = nlohmann::json::array();
  for (const auto& m : scene.materials) names.push_back(m.name);
  map_file << nlohmann::json{{"width", scene.width}, {"height", scene.height}, {"materials", names},
                             {"map", labels}}.dump() << "\n";
  std::cout << nlohmann::json{{"bands", written}}.dump(2) << "\n";
  return 0;
}

std::vector<double> parse_factors(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParameterError("--factors: '" + item + "' is not a number");
    }
  }
  return out;
}

int cmd_simulate_bands(const std::string& image, const std::string& factors_text, std::size_t n_bands, bool clamp,
                       const std::string& out) {
  const Image img = read_image(image);
  std::vector<double> factors;
  if (factors_text.empty()) {
    // Alternating strong and weak scaling, bounded by each band's headroom.
    const auto limit = spectral::max_band_factors(img, n_bands);
    for (std::size_t k = 0; k < n_bands; ++k) factors.push_back(k % 2 ? 0.5 : std::min(1.5, limit[k]));
  } else {
    factors = parse_factors(factors_text);
  }
  if (clamp) {
    const auto limit = spectral::max_band_factors(img, n_bands);
    if (factors.size() == n_bands) {
      for (std::size_t k = 0; k < n_bands; ++k) factors[k] = std::min(factors[k], limit[k]);
    }
  }
  const Image banded = spectral::banded_linear_transform(img, factors, n_bands);
  if (!out.empty()) {
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
    write_png(out, banded);
  }
  const auto fit = spectral::global_scalar_fit(img, banded);
  const auto d = spectral::pixel_discrepancy(img, banded);
  std::cout << nlohmann::json{{"bands", n_bands},
                              {"factors", factors},
                              {"mean_abs_diff", d.mean_abs_diff},
                              {"histogram_distance", d.histogram_distance},
                              {"scalar_fit", {{"scale", fit.scale}, {"residual", fit.residual}}}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_bench(const BenchOptions& opt, const std::string& config, std::optional<std::uint64_t> seed) {
  const auto report = run_bench(policy_from(config, seed), opt);
  std::cout << report_to_json(report).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random linear enhancement toolkit"};
  app.require_subcommand(1);

  std::string input, config, out;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  auto* augment = app.add_subcommand("augment", "Augment a directory or manifest of images");
  augment->add_option("--input", input, "Image directory or CSV manifest")->required();
  augment->add_option("--config", config, "Policy JSON file")->check(CLI::ExistingFile);
  augment->add_option("--out", out, "Output directory")->required();
  augment->add_option("--seed", seed, "Master seed (overrides the config)");
  augment->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string num, den, mask;
  int num_channel = -1, den_channel = -1;
  double eps = spectral::kDefaultRatioEps;
  auto* ratio = app.add_subcommand("analyze-ratio", "Band ratio map and constancy statistics");
  ratio->add_option("--num", num, "Numerator band image")->required()->check(CLI::ExistingFile);
  ratio->add_option("--den", den, "Denominator band image")->required()->check(CLI::ExistingFile);
  ratio->add_option("--num-channel", num_channel, "Channel of a colour numerator")->check(CLI::Range(0, 2));
  ratio->add_option("--den-channel", den_channel, "Channel of a colour denominator")->check(CLI::Range(0, 2));
  ratio->add_option("--eps", eps, "Smallest usable denominator");
  ratio->add_option("--mask", mask, "Region mask image; statistics over pixels > 0.5")->check(CLI::ExistingFile);
  ratio->add_option("--out", out, "False-colour PNG (a .csv sidecar is written next to it)")->required();

  std::string scene;
  auto* render = app.add_subcommand("render-scene", "Render a synthetic multi-band scene");
  render->add_option("--scene", scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out, "Output directory")->required();

  std::string image, factors;
  std::size_t n_bands = 6;
  bool clamp = false;
  auto* simulate = app.add_subcommand("simulate-bands", "Apply per-band linear factors and measure the shift");
  simulate->add_option("--image", image, "Input image")->required()->check(CLI::ExistingFile);
  simulate->add_option("--factors", factors, "Comma-separated factors, one per band");
  simulate->add_option("--bands", n_bands, "Number of horizontal bands")->check(CLI::PositiveNumber);
  simulate->add_flag("--clamp", clamp, "Lower factors that would push a band above 1");
  simulate->add_option("--out", out, "Transformed PNG");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Throughput on synthetic images");
  bench->add_option("--count", bench_opt.count, "Images")->check(CLI::PositiveNumber);
  bench->add_option("--height", bench_opt.height, "Height")->check(CLI::PositiveNumber);
  bench->add_option("--width", bench_opt.width, "Width")->check(CLI::PositiveNumber);
  bench->add_option("--workers", bench_opt.workers, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--config", config, "Policy JSON file")->check(CLI::ExistingFile);
  bench->add_option("--seed", seed, "Master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*augment) return cmd_augment(input, config, out, seed, workers);
    if (*ratio) return cmd_analyze_ratio(num, den, num_channel, den_channel, eps, mask, out);
    if (*render) return cmd_render_scene(scene, out);
    if (*simulate) return cmd_simulate_bands(image, factors, n_bands, clamp, out);
    if (*bench) return cmd_bench(bench_opt, config, seed);
  } catch (const ValidationError& e) {
    std::cerr << "rle: invalid config field " << e.field() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rle: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
