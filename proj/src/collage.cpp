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

#include "splice/collage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splice/error.hpp"

namespace splice {

ColorDescriptor::ColorDescriptor(uint32_t bins_per_channel, std::vector<double> values)
    : bins_(bins_per_channel), values_(std::move(values)) {
  if (bins_ == 0) throw_invalid("descriptor needs at least one bin per channel");
  if (values_.size() != static_cast<size_t>(3) * bins_ + 3) {
    throw_invalid("descriptor length " + std::to_string(values_.size()) + " does not match " +
                  std::to_string(bins_) + " bins per channel");
  }
}

SpliceConfig::SpliceConfig(const Params& params) : params_(params) {
  if (!(params.percentile_k > 0.0 && params.percentile_k < 100.0)) {
    throw_invalid("percentile k must lie in (0, 100)");
  }
  if (params.patch_size == 0) throw_invalid("patch size must be positive");
  if (!(params.magnification > 0.0) || !std::isfinite(params.magnification)) {
    throw_invalid("selection magnification must be positive");
  }
  if (params.bins_per_channel == 0 || params.bins_per_channel > 256) {
    throw_invalid("bins per channel must lie in [1, 256]");
  }
  if (!(params.dup_epsilon >= 0.0) || !std::isfinite(params.dup_epsilon)) {
    throw_invalid("duplicate epsilon must be non-negative");
  }
}

std::vector<PatchRef> Collage::patches() const {
  std::vector<PatchRef> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.patch);
  return out;
}

ColorDescriptor color_descriptor(const RgbImage& pixels, uint32_t bins_per_channel) {
  if (pixels.empty()) throw_invalid("color descriptor of an empty raster");
  if (bins_per_channel == 0 || bins_per_channel > 256) {
    throw_invalid("bins per channel must lie in [1, 256]");
  }

  // Bin i covers [floor(256 i / B), floor(256 (i+1) / B)).
  std::array<uint32_t, 256> bin_of{};
  for (uint32_t i = 0; i < bins_per_channel; ++i) {
    const uint32_t lo = 256 * i / bins_per_channel;
    const uint32_t hi = 256 * (i + 1) / bins_per_channel;
    for (uint32_t v = lo; v < hi; ++v) bin_of[v] = i;
  }

  const size_t bins = bins_per_channel;
  std::vector<uint64_t> counts(3 * bins, 0);
  std::array<uint64_t, 3> sum{};
  std::array<uint64_t, 3> sum_sq{};
  const auto data = pixels.data();
  const size_t n = pixels.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    for (size_t ch = 0; ch < 3; ++ch) {
      const uint8_t v = data[i * 3 + ch];
      ++counts[ch * bins + bin_of[v]];
      sum[ch] += v;
      sum_sq[ch] += static_cast<uint64_t>(v) * v;
    }
  }

  std::vector<double> values(3 * bins + 3);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < 3 * bins; ++i) values[i] = static_cast<double>(counts[i]) * inv_n;
  for (size_t ch = 0; ch < 3; ++ch) {
    // Integer moments keep the variance exact before the final division.
    const double num = static_cast<double>(n) * static_cast<double>(sum_sq[ch]) -
                       static_cast<double>(sum[ch]) * static_cast<double>(sum[ch]);
    const double variance = std::max(0.0, num) * inv_n * inv_n;
    values[3 * bins + ch] = std::sqrt(variance) / 255.0;
  }
  return ColorDescriptor(bins_per_channel, std::move(values));
}

double descriptor_distance(const ColorDescriptor& a, const ColorDescriptor& b) {
  const auto va = a.values();
  const auto vb = b.values();
  if (va.size() != vb.size()) {
    throw_invalid("descriptor lengths differ (" + std::to_string(va.size()) + " vs " +
                  std::to_string(vb.size()) + ")");
  }
  double acc = 0.0;
  for (size_t i = 0; i < va.size(); ++i) {
    const double d = va[i] - vb[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double percentile(std::span<const double> values, double k) {
  if (values.empty()) throw_invalid("percentile of an empty list");
  if (!(k >= 0.0 && k <= 100.0)) throw_invalid("percentile k must lie in [0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = static_cast<double>(sorted.size() - 1) * k / 100.0;
  const auto lo = static_cast<size_t>(std::floor(rank));
  const double frac = rank - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Collage splice_select(std::span<const DescribedPatch> patches, const SpliceConfig& config,
                      std::string wsi_id) {
  Collage collage;
  collage.wsi_id = std::move(wsi_id);
  collage.config = config;
  collage.input_count = static_cast<uint32_t>(patches.size());
  collage.resolved_in_pass.assign(patches.size(), 0);

  for (const auto& [patch, descriptor] : patches) {
    if (descriptor.bins_per_channel() != config.bins_per_channel()) {
      throw_invalid("descriptor bins do not match the configured bins per channel");
    }
  }

  auto& resolved = collage.resolved_in_pass;
  std::vector<size_t> survivors;
  std::vector<double> distances;
  uint32_t pass = 0;
  for (size_t ref = 0; ref < patches.size(); ++ref) {
    if (resolved[ref] != 0) continue;
    resolved[ref] = ++pass;

    survivors.clear();
    distances.clear();
    for (size_t j = ref + 1; j < patches.size(); ++j) {
      if (resolved[j] != 0) continue;
      survivors.push_back(j);
      distances.push_back(descriptor_distance(patches[ref].second, patches[j].second));
    }

    CollageEntry entry{patches[ref].first, pass, 0, 0.0};
    if (!distances.empty()) {
      entry.threshold = percentile(distances, config.percentile_k());
      for (size_t s = 0; s < survivors.size(); ++s) {
        if (distances[s] < entry.threshold || distances[s] <= config.dup_epsilon()) {
          resolved[survivors[s]] = pass;
          ++entry.n_excluded;
        }
      }
    }
    collage.entries.push_back(entry);
  }

  size_t accounted = collage.entries.size();
  for (const auto& entry : collage.entries) accounted += entry.n_excluded;
  if (accounted != patches.size()) {
    throw std::logic_error("collage partition violated: " + std::to_string(accounted) +
                           " accounted of " + std::to_string(patches.size()));
  }
  return collage;
}

uint32_t factor_for_magnification(double base_magnification, double target) {
  if (!(base_magnification > 0.0) || !(target > 0.0)) {
    throw_invalid("magnifications must be positive");
  }
  const double ratio = base_magnification / target;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6 * ratio) {
    throw_invalid("magnification " + std::to_string(target) + "x is not an integer downsample of " +
                  std::to_string(base_magnification) + "x");
  }
  return static_cast<uint32_t>(rounded);
}

std::vector<PatchRef> collage_to_highmag(const Collage& collage, double base_magnification,
                                         double target_magnification) {
  const uint32_t to_factor = factor_for_magnification(base_magnification, target_magnification);
  std::vector<PatchRef> out;
  out.reserve(collage.entries.size());
  for (const auto& entry : collage.entries) {
    if (to_factor > entry.patch.level_factor) {
      throw_invalid("target magnification is below the selection magnification");
    }
    out.push_back(map_patch(entry.patch, to_factor));
  }
  return out;
}

}  // namespace splice
