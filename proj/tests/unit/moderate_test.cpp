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

#include "rle/moderate.hpp"
#include "support/oracles.hpp"

namespace rle {
namespace {

Image random_rgb(std::uint64_t seed, std::size_t h = 16, std::size_t w = 12) {
  SeededRng rng(seed);
  Image img(3, h, w);
  for (double& v : img.data()) v = rng.uniform01();
  return img;
}

Image solid_rgb(double r, double g, double b, std::size_t h = 4, std::size_t w = 5) {
  Image img(3, h, w);
  std::ranges::fill(img.plane(0), r);
  std::ranges::fill(img.plane(1), g);
  std::ranges::fill(img.plane(2), b);
  return img;
}

void expect_constant(const Image& img, double v, double tol = 0.0) {
  for (const double x : img.data()) {
    if (tol == 0.0) {
      ASSERT_EQ(x, v);
    } else {
      ASSERT_NEAR(x, v, tol);
    }
  }
}

TEST(ModerateTransformTest, GrayscaleWeightsMatchGrayscale) {
  const Image img = random_rgb(1);
  EXPECT_EQ(moderate_transform(img, MixWeights{0.299, 0.587, 0.114}), grayscale(img));
}

TEST(ModerateTransformTest, OneHotSelectsChannelExactly) {
  const Image img = random_rgb(2);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(moderate_transform(img, one_hot_weights(c)), extract_channel(img, c));
}

TEST(ModerateTransformTest, EqualChannelsGiveSameValue) {
  for (const double v : {0.0, 0.25, 0.7, 1.0}) {
    expect_constant(moderate_transform(solid_rgb(v, v, v), MixWeights{0.2, 0.3, 0.5}), v, 1e-12);
  }
}

TEST(ModerateTransformTest, RejectsSingleChannelAndBadWeights) {
  EXPECT_THROW(moderate_transform(Image(1, 2, 2), kGrayscaleWeights), ShapeError);
  EXPECT_THROW(moderate_transform(random_rgb(3), MixWeights{0.5, 0.6, 0.0}), ParameterError);
  EXPECT_THROW(moderate_transform(random_rgb(3), MixWeights{1.2, -0.2, 0.0}), ParameterError);
}

TEST(ModerateTransformTest, RangeAndHomogeneityProperty) {
  SeededRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Image img = random_rgb(1000 + trial, 6, 7);
    const MixWeights w = sample_mix_weights(BetaShape(0.3), rng);
    const double alpha = rng.uniform01();
    Image scaled = img;
    for (double& v : scaled.data()) v *= alpha;
    const Image out = moderate_transform(img, w);
    const Image out_scaled = moderate_transform(scaled, w);
    ASSERT_FALSE(validate_image(out).has_value());
    for (std::size_t i = 0; i < out.size(); ++i) ASSERT_NEAR(out_scaled.data()[i], alpha * out.data()[i], 1e-9);
  }
}

TEST(GrayscaleTest, PrimaryColours) {
  expect_constant(grayscale(solid_rgb(1, 0, 0)), 0.299);
  expect_constant(grayscale(solid_rgb(0, 0, 1)), 0.114);
  expect_constant(grayscale(solid_rgb(1, 1, 1)), 1.0, 1e-12);
}

TEST(MixWeightsTest, SampledWeightsStayOnSimplex) {
  SeededRng rng(3);
  for (const double beta : {0.05, 0.3, 1.0, 4.0}) {
    for (int i = 0; i < 20000; ++i) {
      const MixWeights w = sample_mix_weights(BetaShape(beta), rng);
      ASSERT_NEAR(w.sum(), 1.0, 1e-9);
      for (const double x : {w.r, w.g, w.b}) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
      }
    }
  }
}

TEST(MixWeightsTest, ForcedDrawsOnSimplexAreKept) {
  const MixWeights w = normalize_mix(0.299, 0.587, 0.114);
  EXPECT_EQ(w.r, 0.299);
  EXPECT_EQ(w.g, 0.587);
  EXPECT_EQ(w.b, 0.114);
  const MixWeights n = normalize_mix(1.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(n.b, 0.5);
}

TEST(MixWeightsTest, UShapeFavoursDominantChannel) {
  constexpr std::size_t kDraws = 100000;
  auto fraction = [](double beta, std::uint64_t seed) {
    SeededRng rng(seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const MixWeights w = sample_mix_weights(BetaShape(beta), rng);
      hits += std::max({w.r, w.g, w.b}) > 0.9;
    }
    return hits / double(kDraws);
  };
  const double ours_u = fraction(0.3, 10);
  const double ours_flat = fraction(1.0, 11);
  const double oracle_u = testing::oracle_max_weight_fraction(0.3, 0.9, kDraws, 20);
  const double oracle_flat = testing::oracle_max_weight_fraction(1.0, 0.9, kDraws, 21);
  EXPECT_NEAR(ours_u, oracle_u, 0.01);
  EXPECT_NEAR(ours_flat, oracle_flat, 0.01);
  // The oracle's own margin, less a Monte-Carlo allowance.
  EXPECT_GT(ours_u - ours_flat, (oracle_u - oracle_flat) - 0.02);
  EXPECT_GT(ours_u, ours_flat);
}

TEST(MrleTest, ConstantImageStaysConstant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    expect_constant(mrle(solid_rgb(0.42, 0.42, 0.42), BetaShape(0.3), rng), 0.42, 1e-12);
  }
}

TEST(MrleTest, Deterministic) {
  const Image img = random_rgb(5);
  SeededRng a(123), b(123);
  EXPECT_EQ(mrle(img, BetaShape(0.3), a), mrle(img, BetaShape(0.3), b));
}

TEST(MrleTest, LinearInImageScale) {
  const Image j = random_rgb(6);
  for (const double alpha : {0.0, 0.3, 0.9, 1.0}) {
    Image scaled = j;
    for (double& v : scaled.data()) v *= alpha;
    SeededRng a(55), b(55);
    const Image lhs = mrle(scaled, BetaShape(0.3), a);
    const Image rhs = mrle(j, BetaShape(0.3), b);
    for (std::size_t i = 0; i < lhs.size(); ++i) ASSERT_NEAR(lhs.data()[i], alpha * rhs.data()[i], 1e-9);
  }
}

TEST(MrleTest, RejectsMono) {
  SeededRng rng(1);
  EXPECT_THROW(mrle(Image(1, 3, 3), BetaShape(0.3), rng), ShapeError);
}

TEST(RandomChannelTest, OutputIsTheSelectedChannel) {
  const Image img = random_rgb(7);
  bool seen[3] = {false, false, false};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SeededRng probe(seed);
    const std::size_t expected = sample_channel_index(probe);
    seen[expected] = true;
    SeededRng rng(seed);
    const Image out = random_channel(img, rng);
    EXPECT_EQ(out, extract_channel(img, expected));
    EXPECT_EQ(out, moderate_transform(img, one_hot_weights(expected)));
  }
  EXPECT_TRUE(seen[0] && seen[1] && seen[2]);
}

TEST(RandomChannelTest, SelectionIsUniform) {
  SeededRng rng(8);
  std::size_t counts[3] = {0, 0, 0};
  constexpr std::size_t kDraws = 30000;
  for (std::size_t i = 0; i < kDraws; ++i) ++counts[sample_channel_index(rng)];
  for (const auto c : counts) EXPECT_NEAR(c / double(kDraws), 1.0 / 3.0, 0.02);
}

TEST(BroadcastMonoTest, ReplicatesPlane) {
  const Image out = broadcast_mono(Image(1, 3, 4, 0.5));
  EXPECT_EQ(out.channels(), 3u);
  expect_constant(out, 0.5);
  EXPECT_THROW(broadcast_mono(random_rgb(1)), ShapeError);
}

TEST(BroadcastMonoTest, GrayscaleThenBroadcastHasIdenticalPlanes) {
  const Image out = broadcast_mono(grayscale(random_rgb(9)));
  EXPECT_TRUE(std::ranges::equal(out.plane(0), out.plane(1)));
  EXPECT_TRUE(std::ranges::equal(out.plane(0), out.plane(2)));
}

TEST(BroadcastMonoTest, MixingBroadcastRecoversMono) {
  const Image mono = extract_channel(random_rgb(10), 1);
  SeededRng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Image back = moderate_transform(broadcast_mono(mono), sample_mix_weights(BetaShape(0.3), rng));
    for (std::size_t k = 0; k < mono.size(); ++k) ASSERT_NEAR(back.data()[k], mono.data()[k], 1e-9);
  }
}

TEST(ModerateFloatTest, SinglePrecisionInstantiation) {
  ImageTensor<float> img(3, 2, 2, 0.5f);
  const auto out = grayscale(img);
  EXPECT_NEAR(out.data()[0], 0.5f, 1e-6f);
}

}  // namespace
}  // namespace rle
