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

#include "splice/segmentation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "splice/error.hpp"

namespace splice {

double TissueMask::tissue_fraction() const noexcept {
  if (bits.empty()) return 0.0;
  const auto on = std::count(bits.begin(), bits.end(), uint8_t{1});
  return static_cast<double>(on) / static_cast<double>(bits.size());
}

TissueMask threshold_tissue(const RgbImage& image, const SegmentationParams& params) {
  const uint32_t w = image.width();
  const uint32_t h = image.height();
  std::vector<uint8_t> raw(static_cast<size_t>(w) * h, 0);
  for (uint32_t y = 0; y < h; ++y) {
    for (uint32_t x = 0; x < w; ++x) {
      const uint8_t* p = image.pixel(x, y);
      const int max_c = std::max({p[0], p[1], p[2]});
      const int min_c = std::min({p[0], p[1], p[2]});
      const double value = max_c / 255.0;
      const double saturation = max_c == 0 ? 0.0 : static_cast<double>(max_c - min_c) / max_c;
      raw[static_cast<size_t>(y) * w + x] =
          (saturation >= params.saturation_min && value <= params.value_max) ? 1 : 0;
    }
  }

  TissueMask mask;
  mask.width = w;
  mask.height = h;
  mask.level0_width = w;
  mask.level0_height = h;
  mask.bits.assign(raw.size(), 0);
  for (uint32_t y = 0; y < h; ++y) {
    const uint32_t ylo = y == 0 ? 0 : y - 1;
    const uint32_t yhi = std::min(y + 1, h - 1);
    for (uint32_t x = 0; x < w; ++x) {
      const uint32_t xlo = x == 0 ? 0 : x - 1;
      const uint32_t xhi = std::min(x + 1, w - 1);
      int on = 0;
      int total = 0;
      for (uint32_t yy = ylo; yy <= yhi; ++yy) {
        for (uint32_t xx = xlo; xx <= xhi; ++xx) {
          on += raw[static_cast<size_t>(yy) * w + xx];
          ++total;
        }
      }
      const size_t idx = static_cast<size_t>(y) * w + x;
      if (2 * on > total) {
        mask.bits[idx] = 1;
      } else if (2 * on < total) {
        mask.bits[idx] = 0;
      } else {
        mask.bits[idx] = raw[idx];
      }
    }
  }
  return mask;
}

TissueMask segment_tissue(const ImagePyramid& pyramid, uint32_t factor,
                          const SegmentationParams& params) {
  const PyramidLevel* level = pyramid.find_level(factor);
  if (level == nullptr) {
    throw_invalid("pyramid '" + pyramid.id() + "' has no level with factor " +
                  std::to_string(factor));
  }
  TissueMask mask = threshold_tissue(level->image, params);
  mask.level_factor = factor;
  mask.level0_width = pyramid.level0().width();
  mask.level0_height = pyramid.level0().height();
  return mask;
}

std::vector<PatchRef> enumerate_patches(const TissueMask& mask, uint32_t patch_size,
                                        double min_tissue_fraction) {
  if (patch_size == 0) throw_invalid("patch size must be at least 1");
  std::vector<PatchRef> patches;
  const uint64_t footprint = static_cast<uint64_t>(patch_size) * mask.level_factor;
  const double cell_area = static_cast<double>(patch_size) * patch_size;
  for (uint32_t cy = 0; cy + patch_size <= mask.height; cy += patch_size) {
    const uint64_t y0 = static_cast<uint64_t>(cy) * mask.level_factor;
    if (y0 + footprint > mask.level0_height) break;
    for (uint32_t cx = 0; cx + patch_size <= mask.width; cx += patch_size) {
      const uint64_t x0 = static_cast<uint64_t>(cx) * mask.level_factor;
      if (x0 + footprint > mask.level0_width) break;
      size_t on = 0;
      for (uint32_t y = cy; y < cy + patch_size; ++y) {
        const auto row = mask.bits.begin() + static_cast<std::ptrdiff_t>(y) * mask.width + cx;
        on += static_cast<size_t>(std::count(row, row + patch_size, uint8_t{1}));
      }
      if (static_cast<double>(on) / cell_area >= min_tissue_fraction) {
        patches.push_back(PatchRef{static_cast<uint32_t>(x0), static_cast<uint32_t>(y0),
                                   mask.level_factor, patch_size});
      }
    }
  }
  return patches;
}

}  // namespace splice
