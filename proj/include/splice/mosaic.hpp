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

/// @file mosaic.hpp
/// @brief Two-level k-means mosaic selection (color, then spatial).

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splice/collage.hpp"

namespace splice {

struct KMeansOptions {
  uint32_t max_iters = 100;
  double tol = 1e-4;
  uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<uint32_t> assignments;
  std::vector<std::vector<double>> centroids;
  uint32_t iterations = 0;
  /// Sum of squared distances to the assigned centroid after each iteration.
  std::vector<double> objective;
};

/// Lloyd's algorithm with k-means++ seeding. k is clamped to the number of
/// points. A cluster that empties is re-seeded with the point farthest from
/// its centroid (taken from a cluster with more than one member); if every
/// point coincides with its centroid the cluster stays empty.
KMeansResult kmeans(std::span<const std::vector<double>> points, uint32_t k,
                    const KMeansOptions& options);

class MosaicConfig {
 public:
  struct Params {
    uint32_t color_k = 9;
    double select_fraction = 0.05;  // (0, 1]
    uint32_t max_iters = 100;
    double tol = 1e-4;
    uint64_t seed = 0;
  };

  MosaicConfig() : MosaicConfig(Params{}) {}
  explicit MosaicConfig(const Params& params);

  [[nodiscard]] const Params& params() const noexcept { return params_; }

 private:
  Params params_;
};

struct MosaicEntry {
  PatchRef patch;
  uint32_t color_cluster = 0;
  uint32_t spatial_cluster = 0;
};

struct Mosaic {
  std::string wsi_id;
  std::vector<MosaicEntry> entries;
  MosaicConfig config;
  uint32_t input_count = 0;

  [[nodiscard]] std::vector<PatchRef> patches() const;
};

/// Number of spatial clusters for a color cluster of `members` patches.
uint32_t spatial_cluster_count(uint32_t members, double select_fraction);

/// Color k-means over descriptors, spatial k-means over level-0 patch centers
/// within each color cluster, then the patch nearest each spatial centroid
/// (ties toward smaller (y0, x0)).
Mosaic mosaic_select(std::span<const DescribedPatch> patches, const MosaicConfig& config,
                     std::string wsi_id = {});

}  // namespace splice
