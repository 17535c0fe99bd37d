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

/// @file pipeline.hpp
/// @brief Per-slide glue: tissue lattice -> descriptors -> selection ->
///        high-magnification embedding, and corpus-level archive building.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splice/barcode.hpp"
#include "splice/collage.hpp"
#include "splice/embedding.hpp"
#include "splice/manifest.hpp"
#include "splice/mosaic.hpp"
#include "splice/segmentation.hpp"

namespace splice {

enum class SelectionMethod { kSplice, kMosaic, kLattice };

const char* to_string(SelectionMethod method) noexcept;
SelectionMethod parse_selection_method(const std::string& name);

struct PipelineOptions {
  SegmentationParams segmentation;
  double min_tissue_fraction = 0.5;
  /// Selection magnification, patch size and descriptor bins come from here
  /// for every method.
  SpliceConfig splice;
  MosaicConfig mosaic;
  /// Magnification patches are embedded at; unset means the base level.
  std::optional<double> embed_magnification;
};

struct TissueLattice {
  uint32_t factor = 1;
  bool level_warning = false;
  TissueMask mask;
  std::vector<PatchRef> patches;
};

TissueLattice tissue_lattice(const ImagePyramid& pyramid, const PipelineOptions& options);

std::vector<DescribedPatch> describe_patches(const ImagePyramid& pyramid,
                                             std::span<const PatchRef> patches,
                                             uint32_t bins_per_channel);

Collage run_splice(const ImagePyramid& pyramid, const PipelineOptions& options);
/// Runs the mosaic selection; an empty tissue lattice gives an empty mosaic.
Mosaic run_mosaic(const ImagePyramid& pyramid, const PipelineOptions& options);

/// Maps `patches` to the embedding level and histogram-embeds each one.
std::vector<FeatureVector> embed_patches(const ImagePyramid& pyramid,
                                         std::span<const PatchRef> patches,
                                         const PipelineOptions& options);

/// Selected patches of one slide (at the selection level) for `method`.
struct SlideSelection {
  std::string wsi_id;
  uint32_t tissue_patches = 0;
  std::vector<PatchRef> patches;
};

SlideSelection select_patches(const ImagePyramid& pyramid, SelectionMethod method,
                              const PipelineOptions& options);

/// Loads every manifest image, selects, embeds and returns all features in
/// manifest order. `selections`, if given, receives the per-slide selections.
std::vector<FeatureVector> embed_corpus(const Manifest& manifest, SelectionMethod method,
                                        const PipelineOptions& options, unsigned jobs = 1,
                                        std::vector<SlideSelection>* selections = nullptr);

/// Collage sizes of every manifest slide at each percentile. Descriptors are
/// computed once per slide; `options.splice` supplies everything but k.
struct PercentileCurve {
  std::vector<double> ks;
  std::vector<std::string> wsi_ids;
  std::vector<uint32_t> tissue_patches;
  std::vector<std::vector<uint32_t>> collage_sizes;  // [slide][k]

  /// Mean collage size over slides for ks[i].
  double mean_size(size_t i) const;
};

PercentileCurve percentile_curve(const Manifest& manifest, std::span<const double> ks,
                                 const PipelineOptions& options, unsigned jobs = 1);

/// Long format: percentile,wsi_id,tissue_patches,collage_patches,collage_fraction
std::string curve_to_csv(const PercentileCurve& curve);

}  // namespace splice
