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

/// @file pyramid.hpp
/// @brief Magnification-annotated image pyramids and lattice patch geometry.
///
/// A pyramid holds level 0 at the declared base magnification and a chain of
/// 2x box-filtered levels. Every PatchRef carries its origin in level-0
/// pixels, so a patch chosen on a coarse level can be re-cut at any other
/// level without drift.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace splice {

/// Interleaved 8-bit RGB raster.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(uint32_t width, uint32_t height);
  RgbImage(uint32_t width, uint32_t height, std::vector<uint8_t> pixels);

  [[nodiscard]] uint32_t width() const noexcept { return width_; }
  [[nodiscard]] uint32_t height() const noexcept { return height_; }
  [[nodiscard]] bool empty() const noexcept { return width_ == 0 || height_ == 0; }
  [[nodiscard]] size_t pixel_count() const noexcept {
    return static_cast<size_t>(width_) * height_;
  }

  [[nodiscard]] std::span<const uint8_t> data() const noexcept { return pixels_; }
  [[nodiscard]] std::span<uint8_t> data() noexcept { return pixels_; }

  [[nodiscard]] const uint8_t* pixel(uint32_t x, uint32_t y) const noexcept {
    return pixels_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
  }
  [[nodiscard]] uint8_t* pixel(uint32_t x, uint32_t y) noexcept {
    return pixels_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
  }

  /// Copy of the rectangle [x, x+w) x [y, y+h); must lie inside the image.
  [[nodiscard]] RgbImage crop(uint32_t x, uint32_t y, uint32_t w, uint32_t h) const;

  /// Half-resolution copy: each output pixel is the rounded mean of a 2x2
  /// block, with the last row/column replicated when a dimension is odd.
  [[nodiscard]] RgbImage downsample2x() const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  uint32_t width_ = 0;
  uint32_t height_ = 0;
  std::vector<uint8_t> pixels_;
};

/// One lattice cell. x0/y0 are level-0 pixels; size is measured at the level
/// whose downsample factor is level_factor.
struct PatchRef {
  uint32_t x0 = 0;
  uint32_t y0 = 0;
  uint32_t level_factor = 1;
  uint32_t size = 0;

  /// Edge length of the patch in level-0 pixels.
  [[nodiscard]] uint64_t footprint() const noexcept {
    return static_cast<uint64_t>(size) * level_factor;
  }

  friend auto operator<=>(const PatchRef&, const PatchRef&) = default;
};

struct PyramidLevel {
  uint32_t downsample_factor = 1;
  RgbImage image;
};

class ImagePyramid {
 public:
  /// Builds all levels from `level0` by repeated 2x box downsampling, stopping
  /// before any level whose shorter side would drop below 64 px.
  ImagePyramid(std::string id, double base_magnification, RgbImage level0);

  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] double base_magnification() const noexcept { return base_magnification_; }
  [[nodiscard]] const std::vector<PyramidLevel>& levels() const noexcept { return levels_; }
  [[nodiscard]] const RgbImage& level0() const noexcept { return levels_.front().image; }

  /// Level with the given downsample factor, or nullptr.
  [[nodiscard]] const PyramidLevel* find_level(uint32_t factor) const noexcept;

  /// Pixels of `patch`, cut from the level matching its level_factor.
  [[nodiscard]] RgbImage extract(const PatchRef& patch) const;

 private:
  std::string id_;
  double base_magnification_;
  std::vector<PyramidLevel> levels_;
};

/// Reads a PNG or single-page TIFF and builds its pyramid; id is the file stem.
ImagePyramid load_image(const std::filesystem::path& path, double base_magnification);

struct LevelChoice {
  size_t level_index = 0;
  uint32_t factor = 1;
  /// Set when the chosen factor differs from base/target (e.g. the pyramid
  /// is not deep enough).
  bool warning = false;
};

/// Level whose factor is closest to base/target; ties go to the smaller factor.
LevelChoice level_for_magnification(const ImagePyramid& pyramid, double target_magnification);

/// Re-expresses `patch` at `to_factor`, keeping its level-0 footprint.
PatchRef map_patch(const PatchRef& patch, uint32_t to_factor);

}  // namespace splice
