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

/// @file synth.hpp
/// @brief Seeded synthetic slide corpora.
///
/// Each image is a flat background with a few elliptical "tissue" blobs.
/// Tissue pixels are the class mean color plus a low-frequency value-noise
/// brightness field and per-pixel Gaussian jitter. Every image draws from
/// its own PRNG stream derived from the master seed and the image id, so
/// output does not depend on generation order or thread count.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "splice/manifest.hpp"
#include "splice/pyramid.hpp"

namespace splice {

struct SynthClass {
  std::string name;
  std::array<double, 3> mean_rgb{};
  double jitter_sigma = 10.0;
  uint32_t blob_min = 1;
  uint32_t blob_max = 3;
};

struct SynthSpec {
  std::vector<SynthClass> classes;
  uint32_t image_size = 1536;
  uint32_t per_class = 12;
  uint64_t seed = 0;
  std::array<uint8_t, 3> background{255, 255, 255};
  double base_magnification = 2.5;
  /// Peak amplitude of the value-noise brightness field (intensity units).
  double texture_amplitude = 16.0;
  /// Lattice spacing of the value noise in level-0 pixels.
  uint32_t texture_cell = 128;
};

/// Throws InvalidInput unless class means are pairwise >= 60 apart in RGB,
/// per_class >= 2 and the remaining fields are in range.
void validate_synth_spec(const SynthSpec& spec);

/// The built-in palette: up to five H&E-like classes.
std::vector<SynthClass> default_synth_classes(size_t count);

struct SynthImage {
  std::string id;
  std::string label;
  RgbImage image;
  std::vector<uint8_t> tissue;  // 1 where a blob was painted
  double tissue_fraction = 0.0;
};

/// Id of image `index` of class `class_index` (e.g. "pink_003").
std::string synth_image_id(const SynthSpec& spec, size_t class_index, uint32_t index);

SynthImage render_synthetic(const SynthSpec& spec, size_t class_index, uint32_t index);

/// Writes one PNG per image plus `manifest.csv` into `out_dir` (created if
/// missing) and returns the manifest. Rows are class-major.
Manifest generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_dir,
                         unsigned jobs = 1);

}  // namespace splice
