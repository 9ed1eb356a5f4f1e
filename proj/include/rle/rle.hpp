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

// Umbrella header for the transforms and spectral analysis. The pipeline
// headers (rle/pipeline/...) additionally need libpng and libjpeg.

#include "rle/core/error.hpp"
#include "rle/core/image.hpp"
#include "rle/core/random.hpp"
#include "rle/core/rect.hpp"
#include "rle/moderate.hpp"
#include "rle/radical.hpp"
#include "rle/spectral/banded.hpp"
#include "rle/spectral/ratio.hpp"
#include "rle/spectral/render.hpp"
#include "rle/spectral/scene.hpp"
