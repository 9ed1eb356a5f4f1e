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

#include <cstdint>
#include <string_view>

#include "rle/core/image.hpp"
#include "rle/core/random.hpp"
#include "rle/moderate.hpp"
#include "rle/pipeline/manifest.hpp"
#include "rle/pipeline/policy.hpp"
#include "rle/radical.hpp"

namespace rle::pipeline {

/// Per-image seed from the master seed and the record identifier. Depends on
/// nothing else, so batch order and worker count never change outputs.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view identifier) {
  return mix_seed(splitmix64(master_seed), identifier);
}

inline constexpr std::string_view kModerateStream = "stage/moderate";
inline constexpr std::string_view kRadicalStream = "stage/radical";
inline constexpr std::string_view kErasingStream = "stage/erasing";

/// Independent generator for one stage of one image.
inline SeededRng stage_rng(std::uint64_t image_seed, std::string_view stage) {
  return SeededRng(mix_seed(image_seed, stage));
}

template <std::floating_point T>
struct AugmentResult {
  ImageTensor<T> image;
  bool moderate_applied = false;
  bool radical_applied = false;
  bool erasing_applied = false;
  bool moderate_eligible = false;  // visible 3-channel input with the stage enabled
};

/// Runs the enabled stages in order moderate -> radical -> erasing. The
/// moderate stage only touches visible 3-channel images and broadcasts its
/// mono result back to three channels.
template <std::floating_point T>
AugmentResult<T> apply_policy(const ImageTensor<T>& img, Modality modality, const AugmentPolicy& policy,
                              std::uint64_t image_seed) {
  AugmentResult<T> out{img};

  const bool visible = modality == Modality::visible && img.channels() == 3;
  if (policy.moderate.enabled && visible) {
    out.moderate_eligible = true;
    SeededRng rng = stage_rng(image_seed, kModerateStream);
    if (rng.uniform01() < policy.moderate.probability) {
      ImageTensor<T> mono;
      switch (policy.moderate.mode) {
        case ModerateMode::mrle: mono = mrle(out.image, policy.moderate.beta_m, rng); break;
        case ModerateMode::grayscale: mono = grayscale(out.image); break;
        case ModerateMode::random_channel: mono = random_channel(out.image, rng); break;
      }
      out.image = broadcast_mono(mono);
      out.moderate_applied = true;
    }
  }

  if (policy.radical.enabled) {
    SeededRng rng = stage_rng(image_seed, kRadicalStream);
    auto traced = rrle_traced(out.image, policy.radical.params, rng);
    out.radical_applied = traced.applied;
    out.image = std::move(traced.image);
  }

  if (policy.erasing.enabled) {
    SeededRng rng = stage_rng(image_seed, kErasingStream);
    std::optional<RectRegion> erased;
    out.image = random_erasing(out.image, policy.erasing.params, rng, &erased);
    out.erasing_applied = erased.has_value();
  }
  return out;
}

}  // namespace rle::pipeline
