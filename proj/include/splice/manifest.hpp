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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace splice {

/// One image of a corpus. `path` is as written in the manifest (relative
/// paths are relative to the manifest's directory).
struct ManifestRow {
  std::string path;
  std::string id;
  std::string label;
  double base_magnification = 20.0;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

/// CSV with header `path,id,label,base_magnification`.
struct Manifest {
  std::filesystem::path directory;
  std::vector<ManifestRow> rows;

  [[nodiscard]] std::filesystem::path resolve(const ManifestRow& row) const;
  [[nodiscard]] const ManifestRow* find(std::string_view id) const noexcept;
  [[nodiscard]] std::map<std::string, std::string> labels() const;
  /// Distinct labels in order of first appearance.
  [[nodiscard]] std::vector<std::string> classes() const;
};

/// Parses and validates (unique ids, positive magnifications). With
/// `check_files`, every referenced image must exist (IoError otherwise).
Manifest load_manifest(const std::filesystem::path& path, bool check_files = true);
Manifest parse_manifest(const std::string& text, const std::filesystem::path& directory,
                        const std::string& source = "<memory>");
std::string format_manifest(const Manifest& manifest);

}  // namespace splice
