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

#include "splice/pipeline.hpp"

#include "splice/error.hpp"
#include "splice/image_io.hpp"
#include "splice/parallel.hpp"
#include "splice/text.hpp"

namespace splice {

const char* to_string(SelectionMethod method) noexcept {
  switch (method) {
    case SelectionMethod::kSplice:
      return "splice";
    case SelectionMethod::kMosaic:
      return "mosaic";
    case SelectionMethod::kLattice:
      return "lattice";
  }
  return "?";
}

SelectionMethod parse_selection_method(const std::string& name) {
  if (name == "splice" || name == "collage") return SelectionMethod::kSplice;
  if (name == "mosaic") return SelectionMethod::kMosaic;
  if (name == "lattice") return SelectionMethod::kLattice;
  throw_invalid("unknown selection method '" + name + "' (splice, mosaic or lattice)");
}

TissueLattice tissue_lattice(const ImagePyramid& pyramid, const PipelineOptions& options) {
  const LevelChoice level = level_for_magnification(pyramid, options.splice.magnification());
  TissueLattice lattice;
  lattice.factor = level.factor;
  lattice.level_warning = level.warning;
  lattice.mask = segment_tissue(pyramid, level.factor, options.segmentation);
  lattice.patches =
      enumerate_patches(lattice.mask, options.splice.patch_size(), options.min_tissue_fraction);
  return lattice;
}

std::vector<DescribedPatch> describe_patches(const ImagePyramid& pyramid,
                                             std::span<const PatchRef> patches,
                                             uint32_t bins_per_channel) {
  std::vector<DescribedPatch> out;
  out.reserve(patches.size());
  for (const auto& patch : patches) {
    out.emplace_back(patch, color_descriptor(pyramid.extract(patch), bins_per_channel));
  }
  return out;
}

Collage run_splice(const ImagePyramid& pyramid, const PipelineOptions& options) {
  const TissueLattice lattice = tissue_lattice(pyramid, options);
  const auto described =
      describe_patches(pyramid, lattice.patches, options.splice.bins_per_channel());
  return splice_select(described, options.splice, pyramid.id());
}

Mosaic run_mosaic(const ImagePyramid& pyramid, const PipelineOptions& options) {
  const TissueLattice lattice = tissue_lattice(pyramid, options);
  if (lattice.patches.empty()) {
    Mosaic empty;
    empty.wsi_id = pyramid.id();
    empty.config = options.mosaic;
    return empty;
  }
  const auto described =
      describe_patches(pyramid, lattice.patches, options.splice.bins_per_channel());
  return mosaic_select(described, options.mosaic, pyramid.id());
}

std::vector<FeatureVector> embed_patches(const ImagePyramid& pyramid,
                                         std::span<const PatchRef> patches,
                                         const PipelineOptions& options) {
  const uint32_t to_factor =
      options.embed_magnification
          ? factor_for_magnification(pyramid.base_magnification(), *options.embed_magnification)
          : 1U;
  std::vector<FeatureVector> out;
  out.reserve(patches.size());
  for (const auto& patch : patches) {
    if (to_factor > patch.level_factor) {
      throw_invalid("embedding magnification is below the selection magnification");
    }
    const PatchRef high = map_patch(patch, to_factor);
    out.push_back({pyramid.id(), high, embed_histogram(pyramid.extract(high))});
  }
  return out;
}

SlideSelection select_patches(const ImagePyramid& pyramid, SelectionMethod method,
                              const PipelineOptions& options) {
  SlideSelection selection;
  selection.wsi_id = pyramid.id();
  switch (method) {
    case SelectionMethod::kSplice: {
      const Collage collage = run_splice(pyramid, options);
      selection.tissue_patches = collage.input_count;
      selection.patches = collage.patches();
      break;
    }
    case SelectionMethod::kMosaic: {
      const Mosaic mosaic = run_mosaic(pyramid, options);
      selection.tissue_patches = mosaic.input_count;
      selection.patches = mosaic.patches();
      break;
    }
    case SelectionMethod::kLattice: {
      const TissueLattice lattice = tissue_lattice(pyramid, options);
      selection.tissue_patches = static_cast<uint32_t>(lattice.patches.size());
      selection.patches = lattice.patches;
      break;
    }
  }
  return selection;
}

std::vector<FeatureVector> embed_corpus(const Manifest& manifest, SelectionMethod method,
                                        const PipelineOptions& options, unsigned jobs,
                                        std::vector<SlideSelection>* selections) {
  std::vector<std::vector<FeatureVector>> per_slide(manifest.rows.size());
  std::vector<SlideSelection> chosen(manifest.rows.size());
  parallel_for(manifest.rows.size(), jobs, [&](size_t i) {
    const ManifestRow& row = manifest.rows[i];
    const ImagePyramid pyramid(row.id, row.base_magnification,
                               read_image(manifest.resolve(row)));
    chosen[i] = select_patches(pyramid, method, options);
    per_slide[i] = embed_patches(pyramid, chosen[i].patches, options);
  });
  std::vector<FeatureVector> out;
  for (auto& slide : per_slide) {
    out.insert(out.end(), std::make_move_iterator(slide.begin()),
               std::make_move_iterator(slide.end()));
  }
  if (selections != nullptr) *selections = std::move(chosen);
  return out;
}

double PercentileCurve::mean_size(size_t i) const {
  if (collage_sizes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& row : collage_sizes) sum += row.at(i);
  return sum / static_cast<double>(collage_sizes.size());
}

PercentileCurve percentile_curve(const Manifest& manifest, std::span<const double> ks,
                                 const PipelineOptions& options, unsigned jobs) {
  PercentileCurve curve;
  curve.ks.assign(ks.begin(), ks.end());
  const size_t n = manifest.rows.size();
  curve.wsi_ids.resize(n);
  curve.tissue_patches.resize(n);
  curve.collage_sizes.assign(n, std::vector<uint32_t>(ks.size(), 0));
  std::vector<SpliceConfig> configs;
  for (double k : ks) {
    SpliceConfig::Params p = options.splice.params();
    p.percentile_k = k;
    configs.emplace_back(p);
  }
  parallel_for(n, jobs, [&](size_t i) {
    const ManifestRow& row = manifest.rows[i];
    const ImagePyramid pyramid(row.id, row.base_magnification,
                               read_image(manifest.resolve(row)));
    const TissueLattice lattice = tissue_lattice(pyramid, options);
    const auto described =
        describe_patches(pyramid, lattice.patches, options.splice.bins_per_channel());
    curve.wsi_ids[i] = row.id;
    curve.tissue_patches[i] = static_cast<uint32_t>(lattice.patches.size());
    for (size_t j = 0; j < configs.size(); ++j) {
      curve.collage_sizes[i][j] =
          static_cast<uint32_t>(splice_select(described, configs[j], row.id).entries.size());
    }
  });
  return curve;
}

std::string curve_to_csv(const PercentileCurve& curve) {
  std::string out = "percentile,wsi_id,tissue_patches,collage_patches,collage_fraction\n";
  for (size_t j = 0; j < curve.ks.size(); ++j) {
    for (size_t i = 0; i < curve.wsi_ids.size(); ++i) {
      const uint32_t tissue = curve.tissue_patches[i];
      const uint32_t size = curve.collage_sizes[i][j];
      const double fraction = tissue == 0 ? 0.0 : static_cast<double>(size) / tissue;
      out += format_double(curve.ks[j]) + "," + curve.wsi_ids[i] + "," +
             std::to_string(tissue) + "," + std::to_string(size) + "," +
             format_double(fraction) + "\n";
    }
  }
  return out;
}

}  // namespace splice
