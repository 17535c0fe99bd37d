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

#include "splice/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <array>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "splice/error.hpp"

namespace splice {

namespace {

enum class ImageKind { kPng, kTiff, kUnknown };

ImageKind sniff(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open image '" + path.string() + "'");
  std::array<unsigned char, 8> magic{};
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  const auto got = static_cast<size_t>(in.gcount());
  if (got >= 8 && png_sig_cmp(magic.data(), 0, 8) == 0) return ImageKind::kPng;
  if (got >= 4 && ((magic[0] == 'I' && magic[1] == 'I' && magic[2] == 42 && magic[3] == 0) ||
                   (magic[0] == 'M' && magic[1] == 'M' && magic[2] == 0 && magic[3] == 42))) {
    return ImageKind::kTiff;
  }
  return ImageKind::kUnknown;
}

RgbImage read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw_io("cannot decode PNG '" + path.string() + "': " + image.message);
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw_invalid("zero-area image '" + path.string() + "'");
  }
  // Decode as RGBA so transparent pixels keep their color; alpha is dropped.
  image.format = PNG_FORMAT_RGBA;
  std::vector<uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw_io("cannot decode PNG '" + path.string() + "': " + message);
  }
  RgbImage out(image.width, image.height);
  auto dst = out.data();
  for (size_t i = 0, n = out.pixel_count(); i < n; ++i) {
    std::memcpy(&dst[i * 3], &rgba[i * 4], 3);
  }
  return out;
}

struct TiffCloser {
  void operator()(TIFF* tif) const noexcept { TIFFClose(tif); }
};

RgbImage read_tiff(const std::filesystem::path& path) {
  TIFFSetWarningHandler(nullptr);
  std::unique_ptr<TIFF, TiffCloser> tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw_io("cannot open TIFF '" + path.string() + "'");
  uint32_t width = 0;
  uint32_t height = 0;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
  if (width == 0 || height == 0) throw_invalid("zero-area image '" + path.string() + "'");
  std::vector<uint32_t> raster(static_cast<size_t>(width) * height);
  if (TIFFReadRGBAImageOriented(tif.get(), width, height, raster.data(), ORIENTATION_TOPLEFT,
                                0) == 0) {
    throw_io("cannot decode TIFF '" + path.string() + "'");
  }
  RgbImage out(width, height);
  auto dst = out.data();
  for (size_t i = 0; i < raster.size(); ++i) {
    dst[i * 3 + 0] = static_cast<uint8_t>(TIFFGetR(raster[i]));
    dst[i * 3 + 1] = static_cast<uint8_t>(TIFFGetG(raster[i]));
    dst[i * 3 + 2] = static_cast<uint8_t>(TIFFGetB(raster[i]));
  }
  return out;
}

void write_png_impl(const std::filesystem::path& path, uint32_t width, uint32_t height,
                    png_uint_32 format, const uint8_t* data) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = width;
  image.height = height;
  image.format = format;
  if (png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw_io("cannot write PNG '" + path.string() + "': " + message);
  }
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
  switch (sniff(path)) {
    case ImageKind::kPng:
      return read_png(path);
    case ImageKind::kTiff:
      return read_tiff(path);
    case ImageKind::kUnknown:
      break;
  }
  throw_io("'" + path.string() + "' is neither PNG nor TIFF");
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  if (image.empty()) throw_invalid("cannot write an empty image");
  write_png_impl(path, image.width(), image.height(), PNG_FORMAT_RGB, image.data().data());
}

void write_png_gray(const std::filesystem::path& path, uint32_t width, uint32_t height,
                    std::span<const uint8_t> gray) {
  if (width == 0 || height == 0) throw_invalid("cannot write an empty image");
  if (gray.size() != static_cast<size_t>(width) * height) {
    throw_invalid("grayscale buffer size does not match dimensions");
  }
  write_png_impl(path, width, height, PNG_FORMAT_GRAY, gray.data());
}

}  // namespace splice
