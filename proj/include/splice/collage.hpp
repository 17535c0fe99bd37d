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

/// @file collage.hpp
/// @brief Sequential collage selection over color descriptors.
///
/// Patches are scanned in lattice (row-major) order. The first patch not yet
/// excluded becomes the reference of a new pass and joins the collage; every
/// other surviving patch whose descriptor lies closer to the reference than
/// the k-th percentile of the reference-to-survivor distances is excluded.
/// The scan ends when every patch is either a reference or excluded.
///
/// The percentile is recomputed per pass, so the threshold adapts to how
/// typical each reference is: a reference in a large homogeneous region sees
/// many small distances and removes that region in one pass.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splice/pyramid.hpp"

namespace splice {

/// Per-channel RGB histograms (B bins each, L1-normalized) followed by the
/// three per-channel population standard deviations divided by 255.
class ColorDescriptor {
 public:
  ColorDescriptor() = default;
  ColorDescriptor(uint32_t bins_per_channel, std::vector<double> values);

  [[nodiscard]] uint32_t bins_per_channel() const noexcept { return bins_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> histogram(int channel) const noexcept {
    return std::span<const double>(values_).subspan(static_cast<size_t>(channel) * bins_, bins_);
  }
  [[nodiscard]] std::span<const double> stds() const noexcept {
    return std::span<const double>(values_).subspan(static_cast<size_t>(3) * bins_, 3);
  }

  friend bool operator==(const ColorDescriptor&, const ColorDescriptor&) = default;

 private:
  uint32_t bins_ = 0;
  std::vector<double> values_;
};

/// Selection parameters; ranges are checked by the constructor.
class SpliceConfig {
 public:
  struct Params {
    double percentile_k = 30.0;     // (0, 100)
    uint32_t patch_size = 32;       // px at the selection level
    double magnification = 0.625;   // selection magnification
    uint32_t bins_per_channel = 8;
    double dup_epsilon = 1e-12;     // distances <= this always exclude
  };

  SpliceConfig() : SpliceConfig(Params{}) {}
  explicit SpliceConfig(const Params& params);

  [[nodiscard]] const Params& params() const noexcept { return params_; }
  [[nodiscard]] double percentile_k() const noexcept { return params_.percentile_k; }
  [[nodiscard]] uint32_t patch_size() const noexcept { return params_.patch_size; }
  [[nodiscard]] double magnification() const noexcept { return params_.magnification; }
  [[nodiscard]] uint32_t bins_per_channel() const noexcept { return params_.bins_per_channel; }
  [[nodiscard]] double dup_epsilon() const noexcept { return params_.dup_epsilon; }

  friend bool operator==(const SpliceConfig& a, const SpliceConfig& b) noexcept {
    return a.params_.percentile_k == b.params_.percentile_k &&
           a.params_.patch_size == b.params_.patch_size &&
           a.params_.magnification == b.params_.magnification &&
           a.params_.bins_per_channel == b.params_.bins_per_channel &&
           a.params_.dup_epsilon == b.params_.dup_epsilon;
  }

 private:
  Params params_;
};

struct CollageEntry {
  PatchRef patch;
  uint32_t pass_index = 0;   // 1-based
  uint32_t n_excluded = 0;   // patches removed by this pass
  double threshold = 0.0;    // percentile distance used by this pass
};

struct Collage {
  std::string wsi_id;
  std::vector<CollageEntry> entries;
  SpliceConfig config;
  /// Number of tissue patches the selection ran over.
  uint32_t input_count = 0;
  /// For every input patch (in input order), the pass that selected it as a
  /// reference or excluded it. Empty when loaded from JSON.
  std::vector<uint32_t> resolved_in_pass;

  [[nodiscard]] std::vector<PatchRef> patches() const;
};

using DescribedPatch = std::pair<PatchRef, ColorDescriptor>;

ColorDescriptor color_descriptor(const RgbImage& pixels, uint32_t bins_per_channel = 8);

double descriptor_distance(const ColorDescriptor& a, const ColorDescriptor& b);

/// Linear-interpolation percentile of `values` (need not be sorted).
double percentile(std::span<const double> values, double k);

/// Runs the sequential selection. `patches` must be in scan order.
Collage splice_select(std::span<const DescribedPatch> patches, const SpliceConfig& config,
                      std::string wsi_id = {});

/// Maps collage patches to the level matching `target_magnification` on a
/// pyramid whose level 0 is at `base_magnification`.
std::vector<PatchRef> collage_to_highmag(const Collage& collage, double base_magnification,
                                         double target_magnification);

/// Downsample factor that takes `base_magnification` to `target`; throws
/// unless the ratio is a positive integer.
uint32_t factor_for_magnification(double base_magnification, double target);

}  // namespace splice
