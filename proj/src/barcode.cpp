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

#include "splice/barcode.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include "splice/error.hpp"
#include "splice/parallel.hpp"

namespace splice {

namespace {

constexpr std::string_view kMagic = "SPLB";
constexpr uint8_t kVersion = 1;

class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void str16(const std::string& s, const char* what) {
    if (s.size() > std::numeric_limits<uint16_t>::max()) {
      throw_invalid(std::string(what) + " longer than 65535 bytes");
    }
    u16(static_cast<uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  std::vector<uint8_t> take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  std::span<const uint8_t> take(size_t n) {
    if (in_.size() - pos_ < n) {
      throw_format("archive truncated at byte " + std::to_string(pos_) + " (needed " +
                   std::to_string(n) + " more)");
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  uint8_t u8() { return take(1)[0]; }
  uint16_t u16() {
    const auto b = take(2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
  }
  uint32_t u32() {
    const auto b = take(4);
    return uint32_t{b[0]} | (uint32_t{b[1]} << 8) | (uint32_t{b[2]} << 16) |
           (uint32_t{b[3]} << 24);
  }
  std::string str16() {
    const uint16_t len = u16();
    const auto b = take(len);
    return std::string(b.begin(), b.end());
  }
  [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }
  [[nodiscard]] size_t position() const noexcept { return pos_; }

 private:
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

uint16_t narrow_u16(uint32_t v, const char* what) {
  if (v > std::numeric_limits<uint16_t>::max()) {
    throw_invalid(std::string(what) + " " + std::to_string(v) + " does not fit the archive format");
  }
  return static_cast<uint16_t>(v);
}

}  // namespace

Barcode::Barcode(uint32_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

void Barcode::set(uint32_t i, bool on) noexcept {
  const uint64_t mask = uint64_t{1} << (i % 64);
  if (on) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

Barcode Barcode::from_bytes(uint32_t bits, std::span<const uint8_t> bytes) {
  Barcode code(bits);
  if (bytes.size() != code.byte_size()) throw_format("barcode byte count does not match its length");
  for (size_t i = 0; i < bytes.size(); ++i) {
    code.words_[i / 8] |= uint64_t{bytes[i]} << (8 * (i % 8));
  }
  if (bits % 8 != 0 && !bytes.empty()) {
    const uint8_t pad_mask = static_cast<uint8_t>(0xFFu << (bits % 8));
    if ((bytes.back() & pad_mask) != 0) throw_format("barcode pad bits are not zero");
  }
  return code;
}

std::vector<uint8_t> Barcode::to_bytes() const {
  std::vector<uint8_t> out(byte_size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

Barcode minmax_binarize(std::span<const double> values) {
  if (values.size() < 2) throw_invalid("MinMax needs at least two feature values");
  const auto bits = static_cast<uint32_t>(values.size() - 1);
  Barcode code(bits);
  for (uint32_t i = 0; i < bits; ++i) {
    if (values[i + 1] - values[i] > 0.0) code.set(i, true);
  }
  return code;
}

uint32_t hamming(const Barcode& a, const Barcode& b) {
  if (a.size() != b.size()) {
    throw_invalid("barcode lengths differ (" + std::to_string(a.size()) + " vs " +
                  std::to_string(b.size()) + ")");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  uint32_t total = 0;
  for (size_t i = 0; i < wa.size(); ++i) total += static_cast<uint32_t>(std::popcount(wa[i] ^ wb[i]));
  return total;
}

const BarcodeSet* Archive::find(std::string_view wsi_id) const noexcept {
  for (const auto& set : sets) {
    if (set.wsi_id == wsi_id) return &set;
  }
  return nullptr;
}

size_t Archive::barcode_count() const noexcept {
  size_t n = 0;
  for (const auto& set : sets) n += set.barcodes.size();
  return n;
}

void validate_archive(const Archive& archive) {
  std::set<std::string_view> ids;
  for (const auto& set : archive.sets) {
    if (!ids.insert(set.wsi_id).second) throw_invalid("duplicate wsi_id '" + set.wsi_id + "'");
    if (set.barcodes.empty()) throw_invalid("barcode set '" + set.wsi_id + "' is empty");
    for (const auto& entry : set.barcodes) {
      if (entry.code.size() != archive.bits_per_barcode) {
        throw_invalid("barcode length in '" + set.wsi_id + "' differs from the archive's " +
                      std::to_string(archive.bits_per_barcode) + " bits");
      }
    }
  }
}

Archive build_archive(std::span<const FeatureVector> features,
                      const std::map<std::string, std::string>& labels,
                      std::map<std::string, std::string> metadata) {
  Archive archive;
  archive.metadata = std::move(metadata);
  std::map<std::string, size_t, std::less<>> index;
  for (const auto& fv : features) {
    Barcode code = minmax_binarize(fv.values);
    if (archive.sets.empty()) {
      archive.bits_per_barcode = code.size();
    } else if (code.size() != archive.bits_per_barcode) {
      throw_invalid("feature dimension varies across the archive");
    }
    auto it = index.find(fv.wsi_id);
    if (it == index.end()) {
      const auto label = labels.find(fv.wsi_id);
      if (label == labels.end()) throw_invalid("no label for wsi_id '" + fv.wsi_id + "'");
      it = index.emplace(fv.wsi_id, archive.sets.size()).first;
      archive.sets.push_back({fv.wsi_id, label->second, {}});
    }
    archive.sets[it->second].barcodes.push_back({std::move(code), fv.patch});
  }
  validate_archive(archive);
  return archive;
}

double wsi_distance(const BarcodeSet& query, const BarcodeSet& target) {
  if (query.barcodes.empty() || target.barcodes.empty()) {
    throw_invalid("median-of-minimum needs non-empty barcode sets");
  }
  std::vector<uint32_t> minima;
  minima.reserve(query.barcodes.size());
  for (const auto& q : query.barcodes) {
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (const auto& t : target.barcodes) best = std::min(best, hamming(q.code, t.code));
    minima.push_back(best);
  }
  const size_t mid = minima.size() / 2;
  std::nth_element(minima.begin(), minima.begin() + static_cast<std::ptrdiff_t>(mid), minima.end());
  const double upper = minima[mid];
  if (minima.size() % 2 == 1) return upper;
  const double lower = *std::max_element(minima.begin(), minima.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::vector<SearchHit> search(const Archive& archive, const BarcodeSet& query, size_t top_n,
                              std::optional<std::string_view> exclude_id, unsigned jobs) {
  if (top_n == 0) throw_invalid("top_n must be positive");
  std::vector<const BarcodeSet*> candidates;
  for (const auto& set : archive.sets) {
    if (exclude_id && set.wsi_id == *exclude_id) continue;
    candidates.push_back(&set);
  }
  if (candidates.empty()) throw Error(ErrorCode::kEmptyArchive, "archive is empty after exclusion");

  std::vector<SearchHit> hits(candidates.size());
  parallel_for(candidates.size(), jobs, [&](size_t i) {
    hits[i] = {candidates[i]->wsi_id, candidates[i]->label, wsi_distance(query, *candidates[i])};
  });
  const size_t keep = std::min(top_n, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    [](const SearchHit& a, const SearchHit& b) {
                      if (a.distance != b.distance) return a.distance < b.distance;
                      return a.wsi_id < b.wsi_id;
                    });
  hits.resize(keep);
  return hits;
}

size_t serialized_set_size(const BarcodeSet& set, uint32_t bits_per_barcode) {
  const size_t per_barcode = 4 + 4 + 2 + 2 + (static_cast<size_t>(bits_per_barcode) + 7) / 8;
  return 2 + set.wsi_id.size() + 2 + set.label.size() + 4 + set.barcodes.size() * per_barcode;
}

std::vector<uint8_t> serialize_archive(const Archive& archive) {
  validate_archive(archive);
  ByteWriter w;
  for (const char c : kMagic) w.u8(static_cast<uint8_t>(c));
  w.u8(kVersion);
  w.u32(archive.bits_per_barcode);
  w.u32(static_cast<uint32_t>(archive.sets.size()));
  for (const auto& set : archive.sets) {
    w.str16(set.wsi_id, "wsi_id");
    w.str16(set.label, "label");
    w.u32(static_cast<uint32_t>(set.barcodes.size()));
    for (const auto& entry : set.barcodes) {
      w.u32(entry.patch.x0);
      w.u32(entry.patch.y0);
      w.u16(narrow_u16(entry.patch.level_factor, "level factor"));
      w.u16(narrow_u16(entry.patch.size, "patch size"));
      w.bytes(entry.code.to_bytes());
    }
  }
  return w.take();
}

Archive deserialize_archive(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw_format("bad archive magic");
  const uint8_t version = r.u8();
  if (version != kVersion) throw_format("unsupported archive version " + std::to_string(version));

  Archive archive;
  archive.bits_per_barcode = r.u32();
  const size_t code_bytes = (static_cast<size_t>(archive.bits_per_barcode) + 7) / 8;
  const uint32_t n_sets = r.u32();
  if (archive.bits_per_barcode == 0 && n_sets != 0) {
    throw_format("archive declares zero-length barcodes");
  }
  std::set<std::string> ids;
  for (uint32_t s = 0; s < n_sets; ++s) {
    BarcodeSet set;
    set.wsi_id = r.str16();
    set.label = r.str16();
    if (!ids.insert(set.wsi_id).second) throw_format("duplicate wsi_id '" + set.wsi_id + "'");
    const uint32_t n_codes = r.u32();
    if (n_codes == 0) throw_format("barcode set '" + set.wsi_id + "' is empty");
    // Each barcode needs at least 12 + code_bytes bytes; reject counts the
    // remaining input cannot hold before reserving.
    if (static_cast<uint64_t>(n_codes) * (12 + code_bytes) > bytes.size() - r.position()) {
      throw_format("archive truncated in set '" + set.wsi_id + "'");
    }
    set.barcodes.reserve(n_codes);
    for (uint32_t b = 0; b < n_codes; ++b) {
      BarcodeEntry entry;
      entry.patch.x0 = r.u32();
      entry.patch.y0 = r.u32();
      entry.patch.level_factor = r.u16();
      entry.patch.size = r.u16();
      entry.code = Barcode::from_bytes(archive.bits_per_barcode, r.take(code_bytes));
      set.barcodes.push_back(std::move(entry));
    }
    archive.sets.push_back(std::move(set));
  }
  if (!r.done()) throw_format("trailing bytes after archive");
  return archive;
}

void save_archive(const Archive& archive, const std::filesystem::path& path) {
  const auto bytes = serialize_archive(archive);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw_io("cannot write '" + path.string() + "'");
}

Archive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open '" + path.string() + "'");
  const std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return deserialize_archive(bytes);
}

}  // namespace splice
