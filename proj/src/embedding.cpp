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

#include "splice/embedding.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "splice/error.hpp"
#include "splice/text.hpp"

namespace splice {

namespace {

constexpr std::array<std::string_view, 5> kKeyColumns = {"wsi_id", "x0", "y0", "level_factor",
                                                          "size"};

[[noreturn]] void row_error(const std::string& source, size_t line, const std::string& what) {
  throw_format(source + ": line " + std::to_string(line) + ": " + what);
}

uint32_t parse_u32(std::string_view field, const std::string& source, size_t line,
                   std::string_view column) {
  uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    row_error(source, line, "bad integer in column " + std::string(column));
  }
  return v;
}

}  // namespace

std::vector<double> embed_histogram(const RgbImage& pixels) {
  if (pixels.empty()) throw_invalid("histogram embedding of an empty raster");
  std::array<uint64_t, kHistogramEmbeddingDim> counts{};
  const auto data = pixels.data();
  const size_t n = pixels.pixel_count();
  for (size_t i = 0; i < n; ++i) {
    for (size_t ch = 0; ch < 3; ++ch) {
      ++counts[ch * kHistogramEmbeddingBins + (data[i * 3 + ch] >> 2)];
    }
  }
  std::vector<double> values(kHistogramEmbeddingDim);
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return values;
}

std::vector<FeatureVector> parse_features_csv(const std::string& text, const std::string& source) {
  std::vector<FeatureVector> out;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  size_t dim = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      const auto cols = split_csv_line(line);
      if (cols.size() < kKeyColumns.size()) row_error(source, line_no, "header too short");
      for (size_t i = 0; i < kKeyColumns.size(); ++i) {
        if (cols[i] != kKeyColumns[i]) {
          row_error(source, line_no, "expected header column '" + std::string(kKeyColumns[i]) + "'");
        }
      }
      dim = cols.size() - kKeyColumns.size();
      for (size_t j = 0; j < dim; ++j) {
        if (cols[kKeyColumns.size() + j] != "f" + std::to_string(j)) {
          row_error(source, line_no, "expected header column 'f" + std::to_string(j) + "'");
        }
      }
      if (dim < 2) row_error(source, line_no, "feature dimension must be at least 2");
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    if (cols.size() != kKeyColumns.size() + dim) {
      row_error(source, line_no,
                "expected " + std::to_string(kKeyColumns.size() + dim) + " fields, found " +
                    std::to_string(cols.size()));
    }
    FeatureVector fv;
    fv.wsi_id = std::string(cols[0]);
    if (fv.wsi_id.empty()) row_error(source, line_no, "empty wsi_id");
    fv.patch.x0 = parse_u32(cols[1], source, line_no, "x0");
    fv.patch.y0 = parse_u32(cols[2], source, line_no, "y0");
    fv.patch.level_factor = parse_u32(cols[3], source, line_no, "level_factor");
    fv.patch.size = parse_u32(cols[4], source, line_no, "size");
    fv.values.resize(dim);
    for (size_t j = 0; j < dim; ++j) {
      const std::string_view field = cols[kKeyColumns.size() + j];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        row_error(source, line_no, "bad number in column f" + std::to_string(j));
      }
      if (!std::isfinite(v)) row_error(source, line_no, "non-finite value in column f" + std::to_string(j));
      fv.values[j] = v;
    }
    out.push_back(std::move(fv));
  }
  if (!have_header) throw_format(source + ": missing header");
  return out;
}

std::vector<FeatureVector> ingest_external_features(const std::filesystem::path& path) {
  return parse_features_csv(read_text_file(path), path.string());
}

std::string format_features_csv(std::span<const FeatureVector> features) {
  const size_t dim = features.empty() ? 0 : features.front().values.size();
  std::string out = "wsi_id,x0,y0,level_factor,size";
  for (size_t j = 0; j < dim; ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (const auto& fv : features) {
    if (fv.values.size() != dim) throw_invalid("feature vectors have inconsistent dimensions");
    if (fv.wsi_id.find(',') != std::string::npos || fv.wsi_id.find('\n') != std::string::npos) {
      throw_invalid("wsi_id '" + fv.wsi_id + "' cannot be written to CSV");
    }
    out += fv.wsi_id;
    for (const uint32_t v : {fv.patch.x0, fv.patch.y0, fv.patch.level_factor, fv.patch.size}) {
      out += ',';
      out += std::to_string(v);
    }
    for (const double v : fv.values) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void write_features_csv(const std::filesystem::path& path, std::span<const FeatureVector> features) {
  write_text_file(path, format_features_csv(features));
}

}  // namespace splice
