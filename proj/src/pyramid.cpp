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

#include "splice/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "splice/error.hpp"
#include "splice/image_io.hpp"

namespace splice {

namespace {

constexpr uint32_t kMinLevelSide = 64;

}  // namespace

RgbImage::RgbImage(uint32_t width, uint32_t height)
    : width_(width), height_(height), pixels_(static_cast<size_t>(width) * height * 3, 0) {}

RgbImage::RgbImage(uint32_t width, uint32_t height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != static_cast<size_t>(width) * height * 3) {
    throw_invalid("RGB buffer size does not match " + std::to_string(width) + "x" +
                  std::to_string(height));
  }
}

RgbImage RgbImage::crop(uint32_t x, uint32_t y, uint32_t w, uint32_t h) const {
  if (static_cast<uint64_t>(x) + w > width_ || static_cast<uint64_t>(y) + h > height_) {
    throw_invalid("crop rectangle exceeds image bounds");
  }
  RgbImage out(w, h);
  for (uint32_t row = 0; row < h; ++row) {
    std::copy_n(pixel(x, y + row), static_cast<size_t>(w) * 3, out.pixel(0, row));
  }
  return out;
}

RgbImage RgbImage::downsample2x() const {
  const uint32_t out_w = (width_ + 1) / 2;
  const uint32_t out_h = (height_ + 1) / 2;
  RgbImage out(out_w, out_h);
  for (uint32_t oy = 0; oy < out_h; ++oy) {
    const uint32_t y0 = 2 * oy;
    const uint32_t y1 = std::min(y0 + 1, height_ - 1);
    for (uint32_t ox = 0; ox < out_w; ++ox) {
      const uint32_t x0 = 2 * ox;
      const uint32_t x1 = std::min(x0 + 1, width_ - 1);
      const uint8_t* a = pixel(x0, y0);
      const uint8_t* b = pixel(x1, y0);
      const uint8_t* c = pixel(x0, y1);
      const uint8_t* d = pixel(x1, y1);
      uint8_t* o = out.pixel(ox, oy);
      for (int ch = 0; ch < 3; ++ch) {
        const unsigned sum = unsigned{a[ch]} + b[ch] + c[ch] + d[ch];
        o[ch] = static_cast<uint8_t>((sum + 2) / 4);
      }
    }
  }
  return out;
}

ImagePyramid::ImagePyramid(std::string id, double base_magnification, RgbImage level0)
    : id_(std::move(id)), base_magnification_(base_magnification) {
  if (!(base_magnification > 0.0) || !std::isfinite(base_magnification)) {
    throw_invalid("base magnification must be positive");
  }
  if (level0.empty()) throw_invalid("zero-area image '" + id_ + "'");

  levels_.push_back({1, std::move(level0)});
  while (true) {
    const RgbImage& last = levels_.back().image;
    const uint32_t next_min = (std::min(last.width(), last.height()) + 1) / 2;
    if (next_min < kMinLevelSide) break;
    const uint32_t factor = levels_.back().downsample_factor * 2;
    levels_.push_back({factor, last.downsample2x()});
  }
}

const PyramidLevel* ImagePyramid::find_level(uint32_t factor) const noexcept {
  for (const auto& level : levels_) {
    if (level.downsample_factor == factor) return &level;
  }
  return nullptr;
}

RgbImage ImagePyramid::extract(const PatchRef& patch) const {
  const PyramidLevel* level = find_level(patch.level_factor);
  if (level == nullptr) {
    throw_invalid("pyramid '" + id_ + "' has no level with factor " +
                  std::to_string(patch.level_factor));
  }
  if (patch.x0 % patch.level_factor != 0 || patch.y0 % patch.level_factor != 0) {
    throw_invalid("patch origin is not aligned to its level");
  }
  return level->image.crop(patch.x0 / patch.level_factor, patch.y0 / patch.level_factor,
                           patch.size, patch.size);
}

ImagePyramid load_image(const std::filesystem::path& path, double base_magnification) {
  RgbImage level0 = read_image(path);
  return ImagePyramid(path.stem().string(), base_magnification, std::move(level0));
}

LevelChoice level_for_magnification(const ImagePyramid& pyramid, double target_magnification) {
  if (!(target_magnification > 0.0) || !std::isfinite(target_magnification)) {
    throw_invalid("target magnification must be positive");
  }
  const double wanted = pyramid.base_magnification() / target_magnification;
  LevelChoice best;
  double best_gap = std::numeric_limits<double>::infinity();
  const auto& levels = pyramid.levels();
  // Levels are sorted by increasing factor, so a strict improvement test
  // resolves ties toward the smaller factor.
  for (size_t i = 0; i < levels.size(); ++i) {
    const double gap = std::abs(static_cast<double>(levels[i].downsample_factor) - wanted);
    if (gap < best_gap) {
      best_gap = gap;
      best.level_index = i;
      best.factor = levels[i].downsample_factor;
    }
  }
  best.warning = best_gap > 1e-9 * wanted;
  return best;
}

PatchRef map_patch(const PatchRef& patch, uint32_t to_factor) {
  if (to_factor == 0 || patch.level_factor == 0) throw_invalid("level factor must be positive");
  const uint32_t from = patch.level_factor;
  if (from % to_factor != 0 && to_factor % from != 0) {
    throw_invalid("factors " + std::to_string(from) + " and " + std::to_string(to_factor) +
                  " are not commensurate");
  }
  const uint64_t footprint = patch.footprint();
  if (footprint % to_factor != 0) {
    throw_invalid("patch of " + std::to_string(patch.size) + " px at factor " +
                  std::to_string(from) + " has no whole-pixel size at factor " +
                  std::to_string(to_factor));
  }
  const uint64_t size = footprint / to_factor;
  if (size > std::numeric_limits<uint32_t>::max()) throw_invalid("mapped patch size overflows");
  return PatchRef{patch.x0, patch.y0, to_factor, static_cast<uint32_t>(size)};
}

}  // namespace splice
