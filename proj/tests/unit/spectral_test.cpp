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
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rle/core/random.hpp"
#include "rle/spectral/banded.hpp"
#include "rle/spectral/ratio.hpp"
#include "rle/spectral/render.hpp"
#include "rle/spectral/scene_io.hpp"
#include "support/oracles.hpp"

namespace rle::spectral {
namespace {

SceneSpec flat_scene(std::size_t w, std::size_t h) {
  SceneSpec s;
  s.width = w;
  s.height = h;
  s.grid = WavelengthGrid{400.0, 10.0, 31};
  s.materials = {{"flat", SpectralCurve::constant(s.grid, 1.0)}};
  s.material_map.assign(w * h, 0);
  s.bands = {{"flat", SpectralCurve::constant(s.grid, 1.0), SpectralCurve::constant(s.grid, 1.0), 1.0}};
  s.shading.assign(w * h, 1.0);
  return s;
}

SceneSpec demo_scene() { return load_scene(RLE_DATA_DIR "/demo_scene.json"); }

TEST(RenderTest, FlatCurvesIntegrateToSampleCountTimesStep) {
  SceneSpec s = flat_scene(5, 4);
  const auto raw = raw_band_response(s, 0);
  for (const double v : raw) EXPECT_DOUBLE_EQ(v, 310.0);
  s.normalization = 1.0 / 310.0;
  const Image img = render_band(s, 0);
  for (const double v : img.data()) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(RenderTest, ScalarReflectancesRenderProportionally) {
  SceneSpec s = flat_scene(4, 2);
  s.materials = {{"a", SpectralCurve::constant(s.grid, 0.2)}, {"b", SpectralCurve::constant(s.grid, 0.8)}};
  for (std::size_t i = 0; i < 4; ++i) s.material_map[i] = 1;
  const Image img = render_band(s, 0);
  EXPECT_DOUBLE_EQ(img(0, 0, 0), 1.0);
  EXPECT_NEAR(img(0, 1, 0), 0.25, 1e-15);
}

TEST(RenderTest, ExplicitNormalizationAboveOneIsRejected) {
  SceneSpec s = flat_scene(2, 2);
  s.normalization = 1.0 / 300.0;
  EXPECT_THROW(render_band(s, 0), ParameterError);
}

TEST(RenderTest, DemoSceneMatchesNaiveSummation) {
  const SceneSpec s = demo_scene();
  const auto fast = render_all_bands(s);
  const auto slow = testing::naive_render(s);
  ASSERT_EQ(fast.size(), slow.size());
  for (std::size_t b = 0; b < fast.size(); ++b) {
    for (std::size_t i = 0; i < slow[b].size(); ++i) ASSERT_NEAR(fast[b].data()[i], slow[b][i], 1e-9);
  }
  for (const auto& band : fast) EXPECT_FALSE(validate_image(band).has_value());
}

TEST(RenderTest, ValidationErrors) {
  SceneSpec s = flat_scene(2, 2);
  s.material_map[3] = 4;
  EXPECT_THROW(s.validate(), ParameterError);
  s = flat_scene(2, 2);
  s.shading.pop_back();
  EXPECT_THROW(s.validate(), ShapeError);
  s = flat_scene(2, 2);
  s.bands[0].sensitivity.samples.push_back(1.0);
  EXPECT_THROW(s.validate(), ShapeError);
  s = flat_scene(2, 2);
  s.materials[0].reflectance.samples[0] = -0.1;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(RatioTest, SmallExamples) {
  const Image num(1, 1, 3, std::vector<double>{0.5, 0.2, 0.3});
  const Image den(1, 1, 3, std::vector<double>{0.25, 0.001, 0.6});
  const RatioMap m = band_ratio_map(num, den);
  EXPECT_DOUBLE_EQ(m.values[0], 2.0);
  EXPECT_FALSE(m.defined[1]);
  EXPECT_TRUE(std::isnan(m.values[1]));
  EXPECT_DOUBLE_EQ(m.values[2], 0.5);
  EXPECT_EQ(m.defined_count(), 2u);
  const RatioStats st = ratio_constancy_stats(m);
  EXPECT_DOUBLE_EQ(st.mean, 1.25);
  EXPECT_DOUBLE_EQ(st.stddev, 0.75);
  EXPECT_DOUBLE_EQ(st.coefficient_of_variation, 0.6);
}

TEST(RatioTest, ShapeAndParameterErrors) {
  EXPECT_THROW(band_ratio_map(Image(1, 2, 2), Image(1, 2, 3)), ShapeError);
  EXPECT_THROW(band_ratio_map(Image(3, 2, 2), Image(3, 2, 2)), ShapeError);
  EXPECT_THROW(band_ratio_map(Image(1, 2, 2), Image(1, 2, 2), 0.0), ParameterError);
  const RatioMap m = band_ratio_map(Image(1, 2, 2, 0.5), Image(1, 2, 2));
  EXPECT_THROW(ratio_constancy_stats(m), ParameterError);
}

TEST(RatioTest, PerMaterialRatiosAreConstantAndDistinct) {
  const SceneSpec s = demo_scene();
  const auto bands = render_all_bands(s);
  const RatioMap map = band_ratio_map(bands[s.band_index("N")], bands[s.band_index("R")]);
  std::vector<RatioStats> stats;
  for (std::size_t m = 0; m < s.materials.size(); ++m) {
    stats.push_back(ratio_constancy_stats(map, material_mask(s, m)));
    EXPECT_LT(stats.back().coefficient_of_variation, 1e-6) << s.materials[m].name;
  }
  double max_sd = 0.0;
  for (const auto& st : stats) max_sd = std::max(max_sd, st.stddev);
  for (std::size_t a = 0; a < stats.size(); ++a) {
    for (std::size_t b = a + 1; b < stats.size(); ++b) {
      EXPECT_GT(std::abs(stats[a].mean - stats[b].mean), 10.0 * max_sd);
      EXPECT_GT(std::abs(stats[a].mean - stats[b].mean), 1e-3);
    }
  }
}

TEST(RatioTest, RegionStraddlingMaterialsVaries) {
  const SceneSpec s = demo_scene();
  const auto bands = render_all_bands(s);
  const RatioMap map = band_ratio_map(bands[s.band_index("N")], bands[s.band_index("R")]);
  std::vector<bool> mixed = material_mask(s, 0);
  const auto denim = material_mask(s, 2);
  for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = mixed[i] || denim[i];
  EXPECT_GT(ratio_constancy_stats(map, mixed).coefficient_of_variation, 1e-3);
}

TEST(RatioTest, InvariantUnderShadingRescale) {
  SceneSpec s = demo_scene();
  s.normalization = 0.9 / max_raw_response(s);
  const auto before = render_all_bands(s);
  SceneSpec dim = s;
  SeededRng rng(4);
  for (double& v : dim.shading) v *= 0.2 + 0.8 * rng.uniform01();
  const auto after = render_all_bands(dim);
  const auto r0 = band_ratio_map(before[3], before[0], 1e-12);
  const auto r1 = band_ratio_map(after[3], after[0], 1e-12);
  for (std::size_t i = 0; i < r0.values.size(); ++i) {
    ASSERT_TRUE(r0.defined[i] && r1.defined[i]);
    ASSERT_NEAR(r0.values[i], r1.values[i], 1e-9);
  }
}

TEST(RatioTest, BandIntensityScalesRatio) {
  SceneSpec s = demo_scene();
  s.normalization = 0.5 / max_raw_response(s);
  const auto base = render_all_bands(s);
  s.bands[0].intensity *= 0.5;
  const auto scaled = render_all_bands(s);
  const auto r0 = band_ratio_map(base[3], base[0], 1e-12);
  const auto r1 = band_ratio_map(scaled[3], scaled[0], 1e-12);
  for (std::size_t i = 0; i < r0.values.size(); ++i) ASSERT_NEAR(r1.values[i], 2.0 * r0.values[i], 1e-9);
}

TEST(RatioTest, FalseColorEndpoints) {
  const Image num(1, 1, 3, std::vector<double>{0.0, 1.0, 0.5});
  const Image den(1, 1, 3, std::vector<double>{1.0, 1.0, 0.0});
  const Image rgb = ratio_false_color(band_ratio_map(num, den), 0.0, 1.0);
  EXPECT_EQ(rgb(2, 0, 0), 1.0);
  EXPECT_EQ(rgb(0, 0, 1), 1.0);
  EXPECT_EQ(rgb(0, 0, 2) + rgb(1, 0, 2) + rgb(2, 0, 2), 0.0);
  EXPECT_THROW(ratio_false_color(band_ratio_map(num, Image(1, 1, 3, 1.0)), 1.0, 1.0), ParameterError);
}

Image gradient_image(std::size_t h, std::size_t w) {
  Image img(3, h, w);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) img(c, y, x) = 0.1 + 0.4 * (x + y + c) / double(w + h + 2);
    }
  }
  return img;
}

TEST(BandedTest, UnequalFactorsAdmitNoScalarFit) {
  const Image img = gradient_image(60, 20);
  const std::vector<double> factors{0.4, 1.0, 1.6, 0.7, 1.9, 0.2};
  const Image out = banded_linear_transform(img, factors, 6);
  const ScalarFit fit = global_scalar_fit(img, out);
  EXPECT_GT(fit.residual, 1e-3);
  EXPECT_GT(pixel_discrepancy(img, out).histogram_distance, 0.0);
}

TEST(BandedTest, EqualFactorsFitExactly) {
  const Image img = gradient_image(60, 20);
  const Image out = banded_linear_transform(img, std::vector<double>(6, 1.5), 6);
  const ScalarFit fit = global_scalar_fit(img, out);
  EXPECT_NEAR(fit.scale, 1.5, 1e-12);
  EXPECT_NEAR(fit.residual, 0.0, 1e-20);
}

TEST(BandedTest, ScalarFitMatchesClosedFormOracle) {
  const Image img = gradient_image(30, 10);
  const Image out = banded_linear_transform(img, std::vector<double>{0.5, 1.2, 0.9}, 3);
  // Brute-force minimization over a fine grid of scales.
  double best = 1e300, best_k = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double k = i * 1e-4;
    double sse = 0.0;
    for (std::size_t j = 0; j < img.size(); ++j) sse += std::pow(out.data()[j] - k * img.data()[j], 2);
    if (sse < best) best = sse, best_k = k;
  }
  const ScalarFit fit = global_scalar_fit(img, out);
  EXPECT_NEAR(fit.scale, best_k, 1e-4);
  EXPECT_LE(fit.residual, best + 1e-12);
}

TEST(BandedTest, BandRowsPartitionHeight) {
  std::size_t covered = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [a, b] = band_rows(k, 6, 100);
    EXPECT_EQ(a, covered);
    covered = b;
  }
  EXPECT_EQ(covered, 100u);
}

TEST(BandedTest, RejectsBadFactors) {
  const Image img(1, 12, 4, 0.6);
  EXPECT_THROW(banded_linear_transform(img, std::vector<double>{1.0, 1.0}, 3), ParameterError);
  EXPECT_THROW(banded_linear_transform(img, std::vector<double>{1.0, -1.0, 1.0}, 3), ParameterError);
  EXPECT_THROW(banded_linear_transform(img, std::vector<double>{1.0, 1.7, 1.0}, 3), ParameterError);
  const auto mx = max_band_factors(img, 3);
  EXPECT_NO_THROW(banded_linear_transform(img, mx, 3));
}

TEST(BandedTest, DiscrepancyOfIdenticalImagesIsZero) {
  const Image img = gradient_image(10, 10);
  const auto d = pixel_discrepancy(img, img);
  EXPECT_EQ(d.mean_abs_diff, 0.0);
  EXPECT_EQ(d.histogram_distance, 0.0);
}

TEST(SceneIoTest, ParseErrorsNameTheProblem) {
  EXPECT_THROW(parse_scene("{", "x"), ParseError);
  EXPECT_THROW(parse_scene(R"({"width": 2})"), ParseError);
  const std::string bad_material = R"({"width": 2, "height": 2, "materials": [{"reflectance": {"constant": 0.5}}],
    "regions": [{"material": "nope", "rect": [0, 0, 1, 1]}],
    "bands": [{"sensitivity": {"constant": 1}}]})";
  try {
    parse_scene(bad_material);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
  const std::string bad_samples = R"({"width": 1, "height": 1, "materials": [{"reflectance": [0.5, 0.5]}],
    "bands": [{"sensitivity": {"constant": 1}}]})";
  EXPECT_THROW(parse_scene(bad_samples), ShapeError);
}

TEST(SceneIoTest, DemoSceneHasThreeMaterialsAndFourBands) {
  const SceneSpec s = demo_scene();
  EXPECT_EQ(s.materials.size(), 3u);
  EXPECT_EQ(s.bands.size(), 4u);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_GT(std::ranges::count(material_mask(s, m), true), 100);
}

}  // namespace
}  // namespace rle::spectral
