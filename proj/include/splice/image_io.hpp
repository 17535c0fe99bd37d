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
#include <filesystem>
#include <span>

#include "splice/pyramid.hpp"

namespace splice {

/// Decodes an 8-bit PNG or single-page TIFF into RGB; alpha is dropped and
/// grayscale is expanded. Throws IoError when the file cannot be read and
/// InvalidInput for unsupported or zero-area rasters.
RgbImage read_image(const std::filesystem::path& path);

/// Writes an RGB PNG. Output bytes depend only on the pixels.
void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Writes an 8-bit grayscale PNG (`gray` is row-major, width*height bytes).
void write_png_gray(const std::filesystem::path& path, uint32_t width, uint32_t height,
                    std::span<const uint8_t> gray);

}  // namespace splice
