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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "splice/pyramid.hpp"

namespace splice {

inline constexpr size_t kHistogramEmbeddingBins = 64;
inline constexpr size_t kHistogramEmbeddingDim = 3 * kHistogramEmbeddingBins;

struct FeatureVector {
  std::string wsi_id;
  PatchRef patch;
  std::vector<double> values;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Per-channel 64-bin L1-normalized RGB histograms, concatenated (d = 192).
std::vector<double> embed_histogram(const RgbImage& pixels);

/// Parses a feature CSV with header `wsi_id,x0,y0,level_factor,size,f0..f{d-1}`.
/// Ragged rows, non-finite values and d < 2 raise FormatError naming the row.
std::vector<FeatureVector> ingest_external_features(const std::filesystem::path& path);

/// Parses feature CSV text; `source` names it in error messages.
std::vector<FeatureVector> parse_features_csv(const std::string& text,
                                              const std::string& source = "<memory>");

/// Writes features in the same CSV layout, shortest round-trip decimals.
void write_features_csv(const std::filesystem::path& path, std::span<const FeatureVector> features);
std::string format_features_csv(std::span<const FeatureVector> features);

}  // namespace splice
