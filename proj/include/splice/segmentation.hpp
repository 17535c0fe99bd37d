// Copyright 2026 The SPLICE Authors. All Rights Reserved.
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
#include <vector>

#include "splice/pyramid.hpp"

namespace splice {

/// Boolean tissue raster for one pyramid level. level0_width/height bound the
/// level-0 footprint of any patch cut from it.
struct TissueMask {
  uint32_t level_factor = 1;
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t level0_width = 0;
  uint32_t level0_height = 0;
  std::vector<uint8_t> bits;  // row-major, 0 or 1

  [[nodiscard]] bool at(uint32_t x, uint32_t y) const noexcept {
    return bits[static_cast<size_t>(y) * width + x] != 0;
  }
  [[nodiscard]] double tissue_fraction() const noexcept;
};

struct SegmentationParams {
  double saturation_min = 0.05;  // HSV S on [0,1]
  double value_max = 0.98;       // HSV V on [0,1]
};

/// HSV threshold (S >= saturation_min and V <= value_max) followed by one
/// pass of 3x3 majority smoothing; exact ties in border windows keep the
/// thresholded value.
TissueMask threshold_tissue(const RgbImage& image, const SegmentationParams& params = {});

/// Segments the level with downsample factor `factor`.
TissueMask segment_tissue(const ImagePyramid& pyramid, uint32_t factor,
                          const SegmentationParams& params = {});

/// Row-major lattice cells of `patch_size` px at the mask's level whose tissue
/// fraction is at least `min_tissue_fraction`. Cells overflowing the level or
/// the level-0 image are dropped.
std::vector<PatchRef> enumerate_patches(const TissueMask& mask, uint32_t patch_size,
                                        double min_tissue_fraction = 0.5);

}  // namespace splice
