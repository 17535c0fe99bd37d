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

#include "splice/mosaic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "splice/error.hpp"
#include "splice/random.hpp"

namespace splice {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::vector<std::vector<double>> plus_plus_seeds(std::span<const std::vector<double>> points,
                                                 uint32_t k, Rng& rng) {
  const size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.below(n)]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], centroids.back()));
      total += nearest[i];
    }
    size_t pick = n - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        if (target < nearest[i]) {
          pick = i;
          break;
        }
        target -= nearest[i];
        pick = i;
      }
    } else {
      pick = rng.below(n);
    }
    centroids.push_back(points[pick]);
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(std::span<const std::vector<double>> points, uint32_t k,
                    const KMeansOptions& options) {
  if (points.empty()) throw_invalid("k-means needs at least one point");
  if (k == 0) throw_invalid("k-means needs k >= 1");
  const size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw_invalid("k-means points have inconsistent dimensions");
  }
  const size_t n = points.size();
  k = static_cast<uint32_t>(std::min<size_t>(k, n));

  Rng rng(options.seed);
  KMeansResult result;
  result.centroids = plus_plus_seeds(points, k, rng);
  result.assignments.assign(n, 0);
  std::vector<double> dist(n, 0.0);
  std::vector<uint32_t> counts(k, 0);

  for (uint32_t iter = 0; iter < std::max<uint32_t>(options.max_iters, 1); ++iter) {
    std::fill(counts.begin(), counts.end(), 0);
    for (size_t i = 0; i < n; ++i) {
      uint32_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (uint32_t c = 0; c < k; ++c) {
        const double d = squared_distance(points[i], result.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      result.assignments[i] = best;
      dist[i] = best_d;
      ++counts[best];
    }

    for (uint32_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      size_t far = n;
      double far_d = 0.0;
      for (size_t i = 0; i < n; ++i) {
        if (counts[result.assignments[i]] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      if (far == n) continue;
      --counts[result.assignments[far]];
      result.assignments[far] = c;
      counts[c] = 1;
      dist[far] = 0.0;
      result.centroids[c] = points[far];
    }

    std::vector<std::vector<double>> updated(k, std::vector<double>(dim, 0.0));
    for (size_t i = 0; i < n; ++i) {
      auto& acc = updated[result.assignments[i]];
      for (size_t j = 0; j < dim; ++j) acc[j] += points[i][j];
    }
    double movement = 0.0;
    for (uint32_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        updated[c] = result.centroids[c];
        continue;
      }
      for (double& v : updated[c]) v /= counts[c];
      movement += std::sqrt(squared_distance(updated[c], result.centroids[c]));
    }
    result.centroids = std::move(updated);

    double objective = 0.0;
    for (size_t i = 0; i < n; ++i) {
      objective += squared_distance(points[i], result.centroids[result.assignments[i]]);
    }
    result.objective.push_back(objective);
    result.iterations = iter + 1;
    if (movement < options.tol) break;
  }
  return result;
}

MosaicConfig::MosaicConfig(const Params& params) : params_(params) {
  if (params.color_k == 0) throw_invalid("color k must be positive");
  if (!(params.select_fraction > 0.0 && params.select_fraction <= 1.0)) {
    throw_invalid("select fraction must lie in (0, 1]");
  }
  if (params.max_iters == 0) throw_invalid("max iterations must be positive");
  if (!(params.tol > 0.0)) throw_invalid("tolerance must be positive");
}

std::vector<PatchRef> Mosaic::patches() const {
  std::vector<PatchRef> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.patch);
  return out;
}

uint32_t spatial_cluster_count(uint32_t members, double select_fraction) {
  // The epsilon absorbs representation error such as 0.05 * 60 > 3.
  const double wanted = std::ceil(select_fraction * members - 1e-9);
  return std::max<uint32_t>(1, static_cast<uint32_t>(wanted));
}

Mosaic mosaic_select(std::span<const DescribedPatch> patches, const MosaicConfig& config,
                     std::string wsi_id) {
  if (patches.empty()) throw_invalid("mosaic selection needs at least one patch");
  const auto& p = config.params();

  Mosaic mosaic;
  mosaic.wsi_id = std::move(wsi_id);
  mosaic.config = config;
  mosaic.input_count = static_cast<uint32_t>(patches.size());

  std::vector<std::vector<double>> colors;
  colors.reserve(patches.size());
  for (const auto& [patch, descriptor] : patches) {
    colors.emplace_back(descriptor.values().begin(), descriptor.values().end());
  }
  const KMeansResult color = kmeans(colors, p.color_k, {p.max_iters, p.tol, p.seed});

  const auto color_k = static_cast<uint32_t>(color.centroids.size());
  for (uint32_t c = 0; c < color_k; ++c) {
    std::vector<size_t> members;
    for (size_t i = 0; i < patches.size(); ++i) {
      if (color.assignments[i] == c) members.push_back(i);
    }
    if (members.empty()) continue;

    std::vector<std::vector<double>> centers;
    centers.reserve(members.size());
    for (const size_t i : members) {
      const PatchRef& ref = patches[i].first;
      const double half = static_cast<double>(ref.footprint()) / 2.0;
      centers.push_back({ref.x0 + half, ref.y0 + half});
    }
    const uint32_t ks =
        spatial_cluster_count(static_cast<uint32_t>(members.size()), p.select_fraction);
    const KMeansResult spatial =
        kmeans(centers, ks, {p.max_iters, p.tol, derive_seed(p.seed, c + 1)});

    for (uint32_t s = 0; s < spatial.centroids.size(); ++s) {
      size_t best = members.size();
      double best_d = std::numeric_limits<double>::infinity();
      for (size_t m = 0; m < members.size(); ++m) {
        if (spatial.assignments[m] != s) continue;
        const double d = squared_distance(centers[m], spatial.centroids[s]);
        const PatchRef& cand = patches[members[m]].first;
        if (best == members.size() || d < best_d ||
            (d == best_d && std::tie(cand.y0, cand.x0) <
                                std::tie(patches[members[best]].first.y0,
                                         patches[members[best]].first.x0))) {
          best = m;
          best_d = d;
        }
      }
      if (best == members.size()) continue;
      mosaic.entries.push_back({patches[members[best]].first, c, s});
    }
  }
  return mosaic;
}

}  // namespace splice
