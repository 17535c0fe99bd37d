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

// Shared test helpers: a small seeded generator, temp directories and
// error-code assertions. Generators here are deliberately independent of the
// library's own RNG.

#pragma once

#include <gtest/gtest.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "splice/barcode.hpp"
#include "splice/collage.hpp"
#include "splice/error.hpp"
#include "splice/pyramid.hpp"

#define EXPECT_SPLICE_ERROR(statement, expected_code)           \
  EXPECT_THROW(                                                 \
      {                                                         \
        try {                                                   \
          static_cast<void>(statement);                         \
        } catch (const splice::Error& splice_error_) {          \
          EXPECT_EQ(splice_error_.code(), (expected_code))      \
              << splice_error_.what();                          \
          throw;                                                \
        }                                                       \
      },                                                        \
      splice::Error)

namespace splice::testing {

class Gen {
 public:
  explicit Gen(uint64_t seed) : engine_(seed) {}

  // Inclusive range.
  int64_t integer(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(engine_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }
  uint8_t byte() { return static_cast<uint8_t>(integer(0, 255)); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline RgbImage random_image(Gen& g, uint32_t w, uint32_t h) {
  RgbImage img(w, h);
  for (auto& v : img.data()) v = g.byte();
  return img;
}

inline RgbImage solid_image(uint32_t w, uint32_t h, uint8_t r, uint8_t gr, uint8_t b) {
  RgbImage img(w, h);
  for (uint32_t y = 0; y < h; ++y) {
    for (uint32_t x = 0; x < w; ++x) {
      uint8_t* p = img.pixel(x, y);
      p[0] = r;
      p[1] = gr;
      p[2] = b;
    }
  }
  return img;
}

// A valid descriptor: three L1-normalized histograms plus stds in [0, 0.5].
inline ColorDescriptor random_descriptor(Gen& g, uint32_t bins) {
  std::vector<double> values;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> h(bins);
    double sum = 0.0;
    for (auto& v : h) {
      v = g.coin(0.3) ? 0.0 : g.real(0.0, 1.0);
      sum += v;
    }
    if (sum == 0.0) {
      h[0] = 1.0;
      sum = 1.0;
    }
    for (auto& v : h) values.push_back(v / sum);
  }
  for (int c = 0; c < 3; ++c) values.push_back(g.real(0.0, 0.5));
  return ColorDescriptor(bins, values);
}

// Descriptors drawn from a small pool so duplicates and ties occur.
inline std::vector<DescribedPatch> random_described(Gen& g, size_t n, uint32_t bins,
                                                    size_t pool_size) {
  std::vector<ColorDescriptor> pool;
  for (size_t i = 0; i < pool_size; ++i) pool.push_back(random_descriptor(g, bins));
  std::vector<DescribedPatch> out;
  const uint32_t cols = 16;
  for (size_t i = 0; i < n; ++i) {
    const uint32_t cx = static_cast<uint32_t>(i % cols);
    const uint32_t cy = static_cast<uint32_t>(i / cols);
    const PatchRef p{cx * 32 * 4, cy * 32 * 4, 4, 32};
    out.emplace_back(p, pool[static_cast<size_t>(g.integer(0, static_cast<int64_t>(pool_size) - 1))]);
  }
  return out;
}

inline Barcode random_barcode(Gen& g, uint32_t bits) {
  Barcode b(bits);
  for (uint32_t i = 0; i < bits; ++i) b.set(i, g.coin());
  return b;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("splice_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace splice::testing
