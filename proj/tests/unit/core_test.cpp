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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "rle/core/image.hpp"
#include "rle/core/random.hpp"
#include "rle/core/rect.hpp"
#include "support/oracles.hpp"

namespace rle {
namespace {

constexpr std::size_t kDraws = 100000;

TEST(ImageTensorTest, RejectsBadShapes) {
  EXPECT_THROW(Image(2, 4, 4), ShapeError);
  EXPECT_THROW(Image(3, 0, 4), ShapeError);
  EXPECT_THROW(Image(1, 2, 2, std::vector<double>(3)), ShapeError);
  EXPECT_NO_THROW(Image(3, 2, 2, std::vector<double>(12)));
}

TEST(ImageTensorTest, PlanarIndexing) {
  Image img(3, 2, 3);
  img(2, 1, 0) = 0.5;
  EXPECT_EQ(img.data()[2 * 6 + 1 * 3 + 0], 0.5);
  EXPECT_EQ(img.plane(2)[3], 0.5);
}

TEST(ValidateImageTest, AllZerosIsValid) { EXPECT_FALSE(validate_image(Image(3, 4, 4)).has_value()); }

TEST(ValidateImageTest, ReportsValueAboveOne) {
  Image img(3, 4, 4, 0.5);
  img.data()[17] = 1.0000001;
  const auto bad = validate_image(img);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->index, 17u);
  EXPECT_DOUBLE_EQ(bad->value, 1.0000001);
}

TEST(ValidateImageTest, ReportsNegativeValue) {
  Image img(1, 4, 4, 0.5);
  img.data()[3] = -0.01;
  const auto bad = validate_image(img);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->index, 3u);
  EXPECT_DOUBLE_EQ(bad->value, -0.01);
}

TEST(ValidateImageTest, ReportsNaN) {
  Image img(1, 2, 2, 0.5);
  img.data()[1] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(validate_image(img)->index, 1u);
}

TEST(SeededRngTest, SameSeedSameSequence) {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(SeededRngTest, FirstOutputsArePinned) {
  // mt19937_64 output is fixed by the C++ standard; pin the derived reals too.
  SeededRng rng(5489);
  EXPECT_EQ(rng.next_u64(), 14514284786278117030ULL);
  SeededRng r2(5489);
  EXPECT_EQ(r2.uniform01(), static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}

TEST(SeededRngTest, UniformIndexIsUniform) {
  SeededRng rng(7);
  std::vector<int> counts(5);
  for (std::size_t i = 0; i < kDraws; ++i) ++counts[rng.uniform_index(5)];
  for (int c : counts) EXPECT_NEAR(c / double(kDraws), 0.2, 0.01);
}

TEST(BetaShapeTest, RejectsNonPositive) {
  EXPECT_THROW(BetaShape(0.0), ParameterError);
  EXPECT_THROW(BetaShape(-1.0), ParameterError);
  EXPECT_THROW(BetaShape(std::numeric_limits<double>::quiet_NaN()), ParameterError);
  EXPECT_TRUE(BetaShape(0.3).u_shaped());
  EXPECT_FALSE(BetaShape(1.0).u_shaped());
}

TEST(BetaSampleTest, UniformShapeHasMeanHalf) {
  SeededRng rng(1);
  const BetaShape shape(1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < kDraws; ++i) sum += beta_sample(shape, rng);
  EXPECT_NEAR(sum / kDraws, 0.5, 0.01);
}

TEST(BetaSampleTest, UniformShapeMatchesUniformGeneratorByKs) {
  SeededRng beta_rng(11), uni_rng(12);
  const BetaShape shape(1.0);
  std::vector<double> beta_draws(kDraws), uniform_draws(kDraws);
  for (std::size_t i = 0; i < kDraws; ++i) {
    beta_draws[i] = beta_sample(shape, beta_rng);
    uniform_draws[i] = uni_rng.uniform01();
  }
  // Two-sample KS critical value at alpha = 0.01: 1.628 * sqrt((n + m) / (n m)).
  const double critical = 1.628 * std::sqrt(2.0 / kDraws);
  EXPECT_LT(testing::ks_statistic(beta_draws, uniform_draws), critical);
}

TEST(BetaSampleTest, OracleMatchesReferenceValues) {
  // Cross-check of the quadrature oracle against independently computed
  // regularized incomplete beta values.
  EXPECT_NEAR(testing::beta_tail_mass(0.3, 0.1), 0.5654248375866339, 1e-6);
  EXPECT_NEAR(testing::beta_tail_mass(0.4, 0.1), 0.4794783174680300, 1e-6);
  EXPECT_NEAR(testing::beta_tail_mass(1.0, 0.1), 0.2, 1e-9);
}

TEST(BetaSampleTest, UShapedTailMassMatchesIncompleteBeta) {
  for (const double beta : {0.3, 0.4}) {
    SeededRng rng(2024);
    const BetaShape shape(beta);
    std::size_t tail = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const double v = beta_sample(shape, rng);
      tail += (v <= 0.1 || v >= 0.9);
    }
    EXPECT_NEAR(tail / double(kDraws), testing::beta_tail_mass(beta, 0.1), 0.01) << "beta=" << beta;
  }
}

TEST(BetaSampleTest, DrawsStayInUnitInterval) {
  for (const double beta : {0.01, 0.1, 0.3, 1.0, 2.5, 50.0}) {
    SeededRng rng(3);
    const BetaShape shape(beta);
    for (int i = 0; i < 20000; ++i) {
      const double v = beta_sample(shape, rng);
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(BetaSampleTest, Deterministic) {
  SeededRng a(99), b(99);
  const BetaShape shape(0.3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(beta_sample(shape, a), beta_sample(shape, b));
}

TEST(SampleRectTest, ForcedQuarterAreaSquare) {
  SeededRng rng(5);
  const RectBounds b{0.25, 0.25, 1.0, 1.0};
  for (int i = 0; i < 200; ++i) {
    const auto r = sample_rect(100, 100, b, kDefaultRectAttempts, rng);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->w, 50u);
    EXPECT_EQ(r->h, 50u);
    EXPECT_TRUE(r->fits(100, 100));
  }
}

TEST(SampleRectTest, DefaultBoundsAlwaysFitAndAreaWithinSlack) {
  SeededRng rng(6);
  const RectBounds b{};
  constexpr std::size_t W = 192, H = 384;
  for (int i = 0; i < 5000; ++i) {
    const auto r = sample_rect(W, H, b, kDefaultRectAttempts, rng);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(r->x + r->w, W);
    EXPECT_LE(r->y + r->h, H);
    const double area = static_cast<double>(r->area());
    EXPECT_GE(area, 0.5 * b.s_min * W * H);
    EXPECT_LE(area, 2.0 * b.s_max * W * H);
  }
}

TEST(SampleRectTest, ImpossibleTargetGivesNone) {
  // On a 1x1 image an area near 1 with aspect >= 3 rounds to a height of 2.
  SeededRng rng(7);
  const RectBounds b{0.9, 1.0, 3.0, 3.33};
  EXPECT_FALSE(sample_rect(1, 1, b, kDefaultRectAttempts, rng).has_value());
}

TEST(SampleRectTest, RejectsInvalidRanges) {
  SeededRng rng(8);
  EXPECT_THROW(sample_rect(10, 10, RectBounds{0.0, 0.5, 1, 1}, 10, rng), ParameterError);
  EXPECT_THROW(sample_rect(10, 10, RectBounds{0.6, 0.5, 1, 1}, 10, rng), ParameterError);
  EXPECT_THROW(sample_rect(10, 10, RectBounds{0.1, 1.5, 1, 1}, 10, rng), ParameterError);
  EXPECT_THROW(sample_rect(10, 10, RectBounds{0.1, 0.5, 2, 1}, 10, rng), ParameterError);
  EXPECT_THROW(sample_rect(10, 10, RectBounds{0.1, 0.5, 0, 1}, 10, rng), ParameterError);
}

TEST(SampleRectTest, Deterministic) {
  SeededRng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_rect(64, 128, RectBounds{}, 100, a), sample_rect(64, 128, RectBounds{}, 100, b));
  }
}

TEST(SeedMixingTest, DistinctTagsGiveDistinctSeeds) {
  EXPECT_EQ(mix_seed(1, "a"), mix_seed(1, "a"));
  EXPECT_NE(mix_seed(1, "a"), mix_seed(1, "b"));
  EXPECT_NE(mix_seed(1, "a"), mix_seed(2, "a"));
}

}  // namespace
}  // namespace rle
