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

/// @file barcode.hpp
/// @brief MinMax barcodes, Hamming search and the persistent archive.
///
/// On-disk layout (all integers little-endian):
///
///   "SPLB" u8 version=1
///   u32 bits_per_barcode
///   u32 n_sets
///   per set:     u16 id_len, id bytes, u16 label_len, label bytes, u32 n_barcodes
///   per barcode: u32 x0, u32 y0, u16 level_factor, u16 size, ceil(bits/8) bytes
///
/// Barcode bytes are packed LSB-first; pad bits in the last byte must be 0.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splice/embedding.hpp"
#include "splice/pyramid.hpp"

namespace splice {

class Barcode {
 public:
  Barcode() = default;
  /// All-zero barcode of `bits` bits.
  explicit Barcode(uint32_t bits);

  /// Unpacks ceil(bits/8) LSB-first bytes; throws FormatError on set pad bits.
  static Barcode from_bytes(uint32_t bits, std::span<const uint8_t> bytes);

  [[nodiscard]] uint32_t size() const noexcept { return bits_; }
  [[nodiscard]] size_t byte_size() const noexcept { return (bits_ + 7) / 8; }
  [[nodiscard]] bool test(uint32_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(uint32_t i, bool on) noexcept;
  [[nodiscard]] std::span<const uint64_t> words() const noexcept { return words_; }
  [[nodiscard]] std::vector<uint8_t> to_bytes() const;

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  uint32_t bits_ = 0;
  std::vector<uint64_t> words_;
};

/// Bit i is 1 iff values[i+1] > values[i]; length d-1.
Barcode minmax_binarize(std::span<const double> values);

/// Popcount of the XOR of two equal-length barcodes.
uint32_t hamming(const Barcode& a, const Barcode& b);

struct BarcodeEntry {
  Barcode code;
  PatchRef patch;

  friend bool operator==(const BarcodeEntry&, const BarcodeEntry&) = default;
};

struct BarcodeSet {
  std::string wsi_id;
  std::string label;
  std::vector<BarcodeEntry> barcodes;

  friend bool operator==(const BarcodeSet&, const BarcodeSet&) = default;
};

/// Searchable collection of per-WSI barcode sets. `metadata` is an in-memory
/// snapshot of the build configuration and is not part of the file format.
struct Archive {
  uint32_t bits_per_barcode = 0;
  std::vector<BarcodeSet> sets;
  std::map<std::string, std::string> metadata;

  [[nodiscard]] const BarcodeSet* find(std::string_view wsi_id) const noexcept;
  [[nodiscard]] size_t barcode_count() const noexcept;
};

/// Throws InvalidInput unless lengths are uniform, ids unique and every set
/// non-empty.
void validate_archive(const Archive& archive);

/// Binarizes every feature vector and groups them per WSI, in order of first
/// appearance. Every wsi_id must have an entry in `labels`.
Archive build_archive(std::span<const FeatureVector> features,
                      const std::map<std::string, std::string>& labels,
                      std::map<std::string, std::string> metadata = {});

/// Median over `query` barcodes of each one's minimum Hamming distance into
/// `target`. Directional: wsi_distance(q, t) need not equal wsi_distance(t, q).
double wsi_distance(const BarcodeSet& query, const BarcodeSet& target);

struct SearchHit {
  std::string wsi_id;
  std::string label;
  double distance = 0.0;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Exhaustive search; ascending distance, ties by wsi_id. `jobs` > 1 spreads
/// the distance computations over worker threads without changing the result.
std::vector<SearchHit> search(const Archive& archive, const BarcodeSet& query, size_t top_n,
                              std::optional<std::string_view> exclude_id = std::nullopt,
                              unsigned jobs = 1);

std::vector<uint8_t> serialize_archive(const Archive& archive);
Archive deserialize_archive(std::span<const uint8_t> bytes);
void save_archive(const Archive& archive, const std::filesystem::path& path);
Archive load_archive(const std::filesystem::path& path);

/// Bytes a set occupies in the archive file (header plus barcodes).
size_t serialized_set_size(const BarcodeSet& set, uint32_t bits_per_barcode);
/// Fixed archive header size (magic, version, bit count, set count).
inline constexpr size_t kArchiveHeaderBytes = 4 + 1 + 4 + 4;

}  // namespace splice
