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

#include "splice/manifest.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "splice/error.hpp"
#include "splice/text.hpp"

namespace splice {

std::filesystem::path Manifest::resolve(const ManifestRow& row) const {
  const std::filesystem::path p(row.path);
  return p.is_absolute() ? p : directory / p;
}

const ManifestRow* Manifest::find(std::string_view id) const noexcept {
  for (const auto& row : rows) {
    if (row.id == id) return &row;
  }
  return nullptr;
}

std::map<std::string, std::string> Manifest::labels() const {
  std::map<std::string, std::string> out;
  for (const auto& row : rows) out.emplace(row.id, row.label);
  return out;
}

std::vector<std::string> Manifest::classes() const {
  std::vector<std::string> out;
  std::set<std::string_view> seen;
  for (const auto& row : rows) {
    if (seen.insert(row.label).second) out.push_back(row.label);
  }
  return out;
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& directory,
                        const std::string& source) {
  Manifest manifest;
  manifest.directory = directory;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != "path,id,label,base_magnification") {
        throw_format(source + ": line 1: expected header 'path,id,label,base_magnification'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    const std::string where = source + ": line " + std::to_string(line_no) + ": ";
    if (cols.size() != 4) throw_format(where + "expected 4 fields");
    ManifestRow row{std::string(cols[0]), std::string(cols[1]), std::string(cols[2]), 0.0};
    if (row.path.empty() || row.id.empty() || row.label.empty()) {
      throw_format(where + "empty path, id or label");
    }
    const auto [ptr, ec] =
        std::from_chars(cols[3].data(), cols[3].data() + cols[3].size(), row.base_magnification);
    if (ec != std::errc() || ptr != cols[3].data() + cols[3].size() ||
        !std::isfinite(row.base_magnification) || row.base_magnification <= 0.0) {
      throw_format(where + "base magnification must be a positive number");
    }
    if (!ids.insert(row.id).second) throw_format(where + "duplicate id '" + row.id + "'");
    manifest.rows.push_back(std::move(row));
  }
  if (!have_header) throw_format(source + ": missing header");
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path, bool check_files) {
  Manifest manifest =
      parse_manifest(read_text_file(path), path.parent_path(), path.string());
  if (check_files) {
    for (const auto& row : manifest.rows) {
      if (!std::filesystem::exists(manifest.resolve(row))) {
        throw_io(path.string() + ": image '" + row.path + "' for id '" + row.id + "' not found");
      }
    }
  }
  return manifest;
}

std::string format_manifest(const Manifest& manifest) {
  std::string out = "path,id,label,base_magnification\n";
  for (const auto& row : manifest.rows) {
    out += row.path + "," + row.id + "," + row.label + "," +
           format_double(row.base_magnification) + "\n";
  }
  return out;
}

}  // namespace splice
