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

#include "splice/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <system_error>

#include "splice/error.hpp"
#include "splice/image_io.hpp"
#include "splice/parallel.hpp"
#include "splice/random.hpp"
#include "splice/text.hpp"

namespace splice {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinClassSeparation = 60.0;
constexpr double kMinTissueFraction = 0.1;
constexpr double kMaxTissueFraction = 0.9;

struct Ellipse {
  double cx, cy, rx, ry, cos_t, sin_t;
};

/// Seeded lattice value noise in [-1, 1] with smoothstep interpolation.
class ValueNoise {
 public:
  ValueNoise(uint32_t size, uint32_t cell, Rng& rng) : cell_(cell), side_(size / cell + 2) {
    lattice_.resize(static_cast<size_t>(side_) * side_);
    for (double& v : lattice_) v = rng.uniform(-1.0, 1.0);
  }

  [[nodiscard]] double at(double x, double y) const {
    const double fx = x / cell_;
    const double fy = y / cell_;
    const auto ix = static_cast<uint32_t>(fx);
    const auto iy = static_cast<uint32_t>(fy);
    const double tx = smooth(fx - ix);
    const double ty = smooth(fy - iy);
    const double a = node(ix, iy);
    const double b = node(ix + 1, iy);
    const double c = node(ix, iy + 1);
    const double d = node(ix + 1, iy + 1);
    return (a + (b - a) * tx) * (1.0 - ty) + (c + (d - c) * tx) * ty;
  }

 private:
  static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
  [[nodiscard]] double node(uint32_t x, uint32_t y) const {
    return lattice_[static_cast<size_t>(std::min(y, side_ - 1)) * side_ + std::min(x, side_ - 1)];
  }

  uint32_t cell_;
  uint32_t side_;
  std::vector<double> lattice_;
};

std::vector<Ellipse> place_blobs(const SynthSpec& spec, const SynthClass& cls, Rng& rng) {
  const double size = spec.image_size;
  const uint32_t count =
      cls.blob_min + static_cast<uint32_t>(rng.below(cls.blob_max - cls.blob_min + 1));
  const double target_fraction = rng.uniform(0.25, 0.55);
  const double blob_area = target_fraction * size * size / count;
  std::vector<Ellipse> blobs;
  for (uint32_t b = 0; b < count; ++b) {
    const double aspect = rng.uniform(0.6, 1.6);
    const double rx = std::min(std::sqrt(blob_area * aspect / kPi), size * 0.48);
    const double ry = std::min(std::sqrt(blob_area / (aspect * kPi)), size * 0.48);
    const double r = std::max(rx, ry);
    const double cx = rng.uniform(std::min(r, size / 2), std::max(size - r, size / 2));
    const double cy = rng.uniform(std::min(r, size / 2), std::max(size - r, size / 2));
    const double theta = rng.uniform(0.0, kPi);
    blobs.push_back({cx, cy, rx, ry, std::cos(theta), std::sin(theta)});
  }
  return blobs;
}

std::vector<uint8_t> rasterize(const std::vector<Ellipse>& blobs, uint32_t size) {
  std::vector<uint8_t> mask(static_cast<size_t>(size) * size, 0);
  for (const auto& e : blobs) {
    const double r = std::max(e.rx, e.ry);
    const auto y_lo = static_cast<uint32_t>(std::max(0.0, std::floor(e.cy - r)));
    const auto y_hi = static_cast<uint32_t>(std::min<double>(size, std::ceil(e.cy + r)));
    const auto x_lo = static_cast<uint32_t>(std::max(0.0, std::floor(e.cx - r)));
    const auto x_hi = static_cast<uint32_t>(std::min<double>(size, std::ceil(e.cx + r)));
    for (uint32_t y = y_lo; y < y_hi; ++y) {
      for (uint32_t x = x_lo; x < x_hi; ++x) {
        const double dx = x + 0.5 - e.cx;
        const double dy = y + 0.5 - e.cy;
        const double u = (dx * e.cos_t + dy * e.sin_t) / e.rx;
        const double v = (-dx * e.sin_t + dy * e.cos_t) / e.ry;
        if (u * u + v * v <= 1.0) mask[static_cast<size_t>(y) * size + x] = 1;
      }
    }
  }
  return mask;
}

double fraction_on(const std::vector<uint8_t>& mask) {
  const auto on = std::count(mask.begin(), mask.end(), uint8_t{1});
  return static_cast<double>(on) / static_cast<double>(mask.size());
}

}  // namespace

void validate_synth_spec(const SynthSpec& spec) {
  if (spec.classes.empty()) throw_invalid("synthetic corpus needs at least one class");
  if (spec.per_class < 2) throw_invalid("per_class must be at least 2 for leave-one-out");
  if (spec.image_size < 64) throw_invalid("image size must be at least 64 px");
  if (spec.texture_cell == 0) throw_invalid("texture cell must be positive");
  if (!(spec.base_magnification > 0.0)) throw_invalid("base magnification must be positive");
  for (size_t i = 0; i < spec.classes.size(); ++i) {
    const auto& c = spec.classes[i];
    if (c.name.empty() || c.name.find_first_of(",\n/") != std::string::npos) {
      throw_invalid("class name '" + c.name + "' is empty or contains ',', '/' or newline");
    }
    if (c.blob_min == 0 || c.blob_max < c.blob_min) throw_invalid("bad blob count range");
    if (!(c.jitter_sigma >= 0.0)) throw_invalid("jitter sigma must be non-negative");
    for (size_t j = 0; j < i; ++j) {
      if (spec.classes[j].name == c.name) throw_invalid("duplicate class name '" + c.name + "'");
      double d2 = 0.0;
      for (int ch = 0; ch < 3; ++ch) {
        const double d = c.mean_rgb[ch] - spec.classes[j].mean_rgb[ch];
        d2 += d * d;
      }
      if (std::sqrt(d2) < kMinClassSeparation) {
        throw_invalid("class means '" + spec.classes[j].name + "' and '" + c.name +
                      "' are closer than 60 RGB units");
      }
    }
  }
}

std::vector<SynthClass> default_synth_classes(size_t count) {
  static const std::vector<SynthClass> kPalette = {
      {"purple", {120, 60, 150}, 10.0, 1, 3},
      {"pink", {225, 130, 175}, 10.0, 1, 3},
      {"pale", {232, 196, 214}, 8.0, 1, 3},
      {"crimson", {165, 45, 85}, 10.0, 1, 3},
      {"blue", {85, 105, 190}, 10.0, 1, 3},
  };
  if (count == 0 || count > kPalette.size()) {
    throw_invalid("the built-in palette has 1 to " + std::to_string(kPalette.size()) + " classes");
  }
  return {kPalette.begin(), kPalette.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::string synth_image_id(const SynthSpec& spec, size_t class_index, uint32_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_%03u", index);
  return spec.classes.at(class_index).name + buf;
}

SynthImage render_synthetic(const SynthSpec& spec, size_t class_index, uint32_t index) {
  validate_synth_spec(spec);
  const SynthClass& cls = spec.classes.at(class_index);
  SynthImage out;
  out.id = synth_image_id(spec, class_index, index);
  out.label = cls.name;
  Rng rng(derive_seed(spec.seed, hash_string(out.id)));

  const uint32_t size = spec.image_size;
  for (int attempt = 0; attempt < 32; ++attempt) {
    out.tissue = rasterize(place_blobs(spec, cls, rng), size);
    out.tissue_fraction = fraction_on(out.tissue);
    if (out.tissue_fraction >= kMinTissueFraction && out.tissue_fraction <= kMaxTissueFraction) break;
  }
  if (out.tissue_fraction < kMinTissueFraction || out.tissue_fraction > kMaxTissueFraction) {
    const double s = size;
    out.tissue = rasterize({{s / 2, s / 2, s * 0.35, s * 0.35, 1.0, 0.0}}, size);
    out.tissue_fraction = fraction_on(out.tissue);
  }

  const ValueNoise texture(size, spec.texture_cell, rng);
  out.image = RgbImage(size, size);
  for (uint32_t y = 0; y < size; ++y) {
    for (uint32_t x = 0; x < size; ++x) {
      uint8_t* px = out.image.pixel(x, y);
      if (out.tissue[static_cast<size_t>(y) * size + x] == 0) {
        std::copy(spec.background.begin(), spec.background.end(), px);
        continue;
      }
      const double shade = spec.texture_amplitude * texture.at(x + 0.5, y + 0.5);
      for (int ch = 0; ch < 3; ++ch) {
        const double v = cls.mean_rgb[ch] + shade + cls.jitter_sigma * rng.normal();
        px[ch] = static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

Manifest generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_dir,
                         unsigned jobs) {
  validate_synth_spec(spec);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw_io("cannot create output directory '" + out_dir.string() + "'");
  }

  Manifest manifest;
  manifest.directory = out_dir;
  const size_t total = spec.classes.size() * spec.per_class;
  manifest.rows.resize(total);
  parallel_for(total, jobs, [&](size_t i) {
    const size_t c = i / spec.per_class;
    const auto index = static_cast<uint32_t>(i % spec.per_class);
    const SynthImage img = render_synthetic(spec, c, index);
    const std::string file = img.id + ".png";
    write_png(out_dir / file, img.image);
    manifest.rows[i] = {file, img.id, img.label, spec.base_magnification};
  });
  write_text_file(out_dir / "manifest.csv", format_manifest(manifest));
  return manifest;
}

}  // namespace splice
