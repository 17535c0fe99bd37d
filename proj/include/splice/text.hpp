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

// Small text helpers shared by the CSV/JSON readers and writers.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace splice {

/// Splits on ',' with no quoting; the views alias `line`.
std::vector<std::string_view> split_csv_line(std::string_view line);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);

/// Writes bytes verbatim (LF line endings preserved).
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace splice
