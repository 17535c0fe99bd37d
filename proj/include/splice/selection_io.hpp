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

// JSON forms of collages and mosaics:
//
//   {"wsi_id", "kind": "collage", "config": {...}, "n_tissue_patches",
//    "entries": [{x0, y0, level_factor, size, pass_index, n_excluded, threshold}]}
//   {"wsi_id", "kind": "mosaic", "config": {...}, "n_tissue_patches",
//    "entries": [{x0, y0, level_factor, size, color_cluster, spatial_cluster}]}

#pragma once

#include <filesystem>
#include <string>

#include "splice/collage.hpp"
#include "splice/mosaic.hpp"

namespace splice {

std::string collage_to_json(const Collage& collage);
Collage collage_from_json(const std::string& text);

std::string mosaic_to_json(const Mosaic& mosaic);
Mosaic mosaic_from_json(const std::string& text);

/// "collage" or "mosaic", read from the document's "kind" field.
std::string selection_kind(const std::string& text);

}  // namespace splice
