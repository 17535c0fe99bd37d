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

#include "splice/selection_io.hpp"

#include <nlohmann/json.hpp>

#include "splice/error.hpp"

namespace splice {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw_format(std::string("malformed selection JSON: ") + e.what());
  }
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw_format(std::string("invalid selection JSON: ") + e.what());
  }
}

void put_patch(Json& j, const PatchRef& p) {
  j["x0"] = p.x0;
  j["y0"] = p.y0;
  j["level_factor"] = p.level_factor;
  j["size"] = p.size;
}

PatchRef get_patch(const Json& j) {
  return PatchRef{j.at("x0").get<uint32_t>(), j.at("y0").get<uint32_t>(),
                  j.at("level_factor").get<uint32_t>(), j.at("size").get<uint32_t>()};
}

void expect_kind(const Json& j, const char* kind) {
  if (j.at("kind").get<std::string>() != kind) {
    throw_format(std::string("selection JSON is not a ") + kind);
  }
}

}  // namespace

std::string collage_to_json(const Collage& collage) {
  Json j;
  j["wsi_id"] = collage.wsi_id;
  j["kind"] = "collage";
  const auto& p = collage.config.params();
  j["config"] = {{"percentile_k", p.percentile_k},
                 {"patch_size", p.patch_size},
                 {"magnification", p.magnification},
                 {"bins_per_channel", p.bins_per_channel},
                 {"dup_epsilon", p.dup_epsilon}};
  j["n_tissue_patches"] = collage.input_count;
  Json entries = Json::array();
  for (const auto& e : collage.entries) {
    Json row;
    put_patch(row, e.patch);
    row["pass_index"] = e.pass_index;
    row["n_excluded"] = e.n_excluded;
    row["threshold"] = e.threshold;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

Collage collage_from_json(const std::string& text) {
  const Json j = parse(text);
  return guarded([&] {
    expect_kind(j, "collage");
    Collage c;
    c.wsi_id = j.at("wsi_id").get<std::string>();
    const Json& cfg = j.at("config");
    SpliceConfig::Params p;
    p.percentile_k = cfg.at("percentile_k").get<double>();
    p.patch_size = cfg.at("patch_size").get<uint32_t>();
    p.magnification = cfg.at("magnification").get<double>();
    p.bins_per_channel = cfg.at("bins_per_channel").get<uint32_t>();
    p.dup_epsilon = cfg.at("dup_epsilon").get<double>();
    try {
      c.config = SpliceConfig(p);
    } catch (const Error& e) {
      throw_format(std::string("collage config: ") + e.what());
    }
    c.input_count = j.at("n_tissue_patches").get<uint32_t>();
    uint32_t expected_pass = 1;
    size_t accounted = 0;
    for (const Json& row : j.at("entries")) {
      CollageEntry e;
      e.patch = get_patch(row);
      e.pass_index = row.at("pass_index").get<uint32_t>();
      e.n_excluded = row.at("n_excluded").get<uint32_t>();
      e.threshold = row.at("threshold").get<double>();
      if (e.pass_index != expected_pass++) throw_format("collage pass indices are not consecutive");
      accounted += 1 + e.n_excluded;
      c.entries.push_back(e);
    }
    if (accounted != c.input_count) {
      throw_format("collage entries do not partition its tissue patches");
    }
    return c;
  });
}

std::string mosaic_to_json(const Mosaic& mosaic) {
  Json j;
  j["wsi_id"] = mosaic.wsi_id;
  j["kind"] = "mosaic";
  const auto& p = mosaic.config.params();
  j["config"] = {{"color_k", p.color_k},
                 {"select_fraction", p.select_fraction},
                 {"max_iters", p.max_iters},
                 {"tol", p.tol},
                 {"seed", p.seed}};
  j["n_tissue_patches"] = mosaic.input_count;
  Json entries = Json::array();
  for (const auto& e : mosaic.entries) {
    Json row;
    put_patch(row, e.patch);
    row["color_cluster"] = e.color_cluster;
    row["spatial_cluster"] = e.spatial_cluster;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

Mosaic mosaic_from_json(const std::string& text) {
  const Json j = parse(text);
  return guarded([&] {
    expect_kind(j, "mosaic");
    Mosaic m;
    m.wsi_id = j.at("wsi_id").get<std::string>();
    const Json& cfg = j.at("config");
    MosaicConfig::Params p;
    p.color_k = cfg.at("color_k").get<uint32_t>();
    p.select_fraction = cfg.at("select_fraction").get<double>();
    p.max_iters = cfg.at("max_iters").get<uint32_t>();
    p.tol = cfg.at("tol").get<double>();
    p.seed = cfg.at("seed").get<uint64_t>();
    try {
      m.config = MosaicConfig(p);
    } catch (const Error& e) {
      throw_format(std::string("mosaic config: ") + e.what());
    }
    m.input_count = j.at("n_tissue_patches").get<uint32_t>();
    for (const Json& row : j.at("entries")) {
      m.entries.push_back({get_patch(row), row.at("color_cluster").get<uint32_t>(),
                           row.at("spatial_cluster").get<uint32_t>()});
    }
    return m;
  });
}

std::string selection_kind(const std::string& text) {
  const Json j = parse(text);
  return guarded([&] { return j.at("kind").get<std::string>(); });
}

}  // namespace splice
