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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <set>

#include "oracles.hpp"
#include "splice/barcode.hpp"
#include "support.hpp"

namespace splice {
namespace {

using testing::Gen;
using testing::TempDir;

Barcode from_string(const std::string& s) {
  Barcode b(static_cast<uint32_t>(s.size()));
  for (size_t i = 0; i < s.size(); ++i) b.set(static_cast<uint32_t>(i), s[i] == '1');
  return b;
}

std::string to_string(const Barcode& b) {
  std::string s;
  for (uint32_t i = 0; i < b.size(); ++i) s += b.test(i) ? '1' : '0';
  return s;
}

BarcodeSet make_set(const std::string& id, const std::string& label,
                    const std::vector<std::string>& codes) {
  BarcodeSet set{id, label, {}};
  uint32_t x = 0;
  for (const auto& c : codes) set.barcodes.push_back({from_string(c), {x++ * 32, 0, 1, 32}});
  return set;
}

Archive random_archive(Gen& g, size_t max_sets, size_t max_codes, uint32_t max_bits) {
  Archive a;
  a.bits_per_barcode = static_cast<uint32_t>(g.integer(1, max_bits));
  const size_t n_sets = static_cast<size_t>(g.integer(1, static_cast<int64_t>(max_sets)));
  for (size_t s = 0; s < n_sets; ++s) {
    BarcodeSet set{"wsi_" + std::to_string(g.integer(0, 3)) + "_" + std::to_string(s),
                   "class" + std::to_string(g.integer(0, 2)), {}};
    const size_t n = static_cast<size_t>(g.integer(1, static_cast<int64_t>(max_codes)));
    for (size_t i = 0; i < n; ++i) {
      set.barcodes.push_back({testing::random_barcode(g, a.bits_per_barcode),
                              {static_cast<uint32_t>(g.integer(0, 1 << 20)),
                               static_cast<uint32_t>(g.integer(0, 1 << 20)),
                               static_cast<uint32_t>(g.integer(1, 64)),
                               static_cast<uint32_t>(g.integer(1, 4096))}});
    }
    a.sets.push_back(std::move(set));
  }
  return a;
}

TEST(MinMax, Examples) {
  const std::vector<double> inc{-3, -1, 0, 2.5, 7};
  EXPECT_EQ(to_string(minmax_binarize(inc)), "1111");
  const std::vector<double> flat(6, 0.4);
  EXPECT_EQ(to_string(minmax_binarize(flat)), "00000");
  const std::vector<double> mixed{0.1, 0.5, 0.3, 0.3};
  EXPECT_EQ(to_string(minmax_binarize(mixed)), "100");
  EXPECT_SPLICE_ERROR(minmax_binarize(std::vector<double>{1.0}), ErrorCode::kInvalidInput);
  EXPECT_SPLICE_ERROR(minmax_binarize(std::vector<double>{}), ErrorCode::kInvalidInput);
}

TEST(MinMax, LengthAndMonotoneTransformInvariance) {
  Gen g(61);
  const std::vector<std::function<double(double)>> transforms = {
      [](double x) { return std::exp(x); },
      [](double x) { return x * x * x; },
      [](double x) { return std::atan(x); },
      [](double x) { return 3.5 * x - 2.0; },
      [](double x) { return std::sinh(x); },
      [](double x) { return x + std::floor(x) * 10.0; },
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(static_cast<size_t>(g.integer(2, 300)));
    for (auto& v : f) v = g.coin(0.2) ? 1.0 : g.real(-3, 3);
    const auto& t = transforms[static_cast<size_t>(trial) % transforms.size()];
    std::vector<double> tf(f.size());
    for (size_t i = 0; i < f.size(); ++i) tf[i] = t(f[i]);
    const Barcode a = minmax_binarize(f);
    EXPECT_EQ(a.size(), f.size() - 1);
    EXPECT_EQ(a, minmax_binarize(tf));
    const auto bits = oracle::minmax_bits(f);
    for (uint32_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.test(i), bits[i]);
  }
}

TEST(Hamming, Examples) {
  EXPECT_EQ(hamming(from_string("10110"), from_string("00111")), 2U);
  Gen g(62);
  const Barcode a = testing::random_barcode(g, 191);
  Barcode complement(191);
  for (uint32_t i = 0; i < 191; ++i) complement.set(i, !a.test(i));
  EXPECT_EQ(hamming(a, a), 0U);
  EXPECT_EQ(hamming(a, complement), 191U);
  EXPECT_SPLICE_ERROR(hamming(a, Barcode(190)), ErrorCode::kInvalidInput);
}

TEST(Hamming, MetricAxiomsAndPerBitReference) {
  Gen g(63);
  for (int trial = 0; trial < 1000; ++trial) {
    const uint32_t bits = static_cast<uint32_t>(g.integer(1, 300));
    const Barcode a = testing::random_barcode(g, bits);
    const Barcode b = testing::random_barcode(g, bits);
    const Barcode c = testing::random_barcode(g, bits);
    EXPECT_EQ(hamming(a, a), 0U);
    EXPECT_EQ(hamming(a, b), hamming(b, a));
    EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
    EXPECT_EQ(hamming(a, b), oracle::hamming(a, b));
    if (a != b) {
      EXPECT_GT(hamming(a, b), 0U);
    }
  }
}

TEST(Barcode, BytesArePackedLsbFirst) {
  const Barcode b = from_string("1000000001");
  EXPECT_EQ(b.to_bytes(), (std::vector<uint8_t>{0x01, 0x02}));
  Gen g(64);
  const Barcode wide = testing::random_barcode(g, 191);
  const auto bytes = wide.to_bytes();
  ASSERT_EQ(bytes.size(), 24U);
  EXPECT_EQ(bytes[23] & 0x80, 0);
  EXPECT_EQ(Barcode::from_bytes(191, bytes), wide);
  auto dirty = bytes;
  dirty[23] |= 0x80;
  EXPECT_SPLICE_ERROR(Barcode::from_bytes(191, dirty), ErrorCode::kFormat);
  EXPECT_SPLICE_ERROR(Barcode::from_bytes(191, std::span(bytes).first(23)), ErrorCode::kFormat);
}

TEST(WsiDistance, Examples) {
  const BarcodeSet q = make_set("q", "a", {"0000", "1111", "1100"});
  EXPECT_EQ(wsi_distance(q, q), 0.0);
  // Minima per query barcode: 1, 0, 2.
  const BarcodeSet t3 = make_set("t", "a", {"1000", "1111", "0011"});
  EXPECT_EQ(oracle::wsi_distance(q, t3), 1.0);
  EXPECT_EQ(wsi_distance(q, t3), 1.0);
  // Minima 3 and 1.
  const BarcodeSet q2 = make_set("q2", "a", {"1110", "0101"});
  const BarcodeSet t2 = make_set("t2", "a", {"0001", "0011"});
  EXPECT_EQ(wsi_distance(q2, t2), 2.0);
  EXPECT_SPLICE_ERROR(wsi_distance(q, make_set("z", "a", {"000"})), ErrorCode::kInvalidInput);
}

TEST(WsiDistance, DirectionalAsymmetryIsAllowed) {
  const BarcodeSet small = make_set("s", "a", {"0000"});
  const BarcodeSet big = make_set("b", "a", {"0000", "1111", "1110"});
  EXPECT_EQ(wsi_distance(small, big), 0.0);
  EXPECT_EQ(wsi_distance(big, small), 3.0);
}

TEST(Search, Examples) {
  Archive a;
  a.bits_per_barcode = 4;
  a.sets = {make_set("m1", "x", {"1111"}), make_set("m2", "y", {"0000"}),
            make_set("m3", "z", {"1100"})};
  const auto hits = search(a, a.sets[1], 3);
  ASSERT_EQ(hits.size(), 3U);
  EXPECT_EQ(hits[0], (SearchHit{"m2", "y", 0.0}));
  EXPECT_EQ(hits[1].wsi_id, "m3");
  EXPECT_EQ(hits[2].wsi_id, "m1");

  const auto loo = search(a, a.sets[1], 5, "m2");
  ASSERT_EQ(loo.size(), 2U);
  for (const auto& h : loo) EXPECT_NE(h.wsi_id, "m2");

  EXPECT_SPLICE_ERROR(search(a, a.sets[0], 0), ErrorCode::kInvalidInput);
  Archive solo;
  solo.bits_per_barcode = 4;
  solo.sets = {a.sets[0]};
  EXPECT_SPLICE_ERROR(search(solo, a.sets[0], 1, "m1"), ErrorCode::kEmptyArchive);
}

// Distances 5, 2 and 9 from a 16-bit query; equal distances fall back to id order.
TEST(Search, OrdersByDistanceThenId) {
  Archive a;
  a.bits_per_barcode = 16;
  a.sets = {make_set("a", "l", {"1111100000000000"}), make_set("b", "l", {"1100000000000000"}),
            make_set("c", "l", {"1111111110000000"}), make_set("0", "l", {"0000011000000000"})};
  const BarcodeSet q = make_set("q", "l", {"0000000000000000"});
  const auto hits = search(a, q, 4);
  ASSERT_EQ(hits.size(), 4U);
  EXPECT_EQ(hits[0], (SearchHit{"0", "l", 2.0}));
  EXPECT_EQ(hits[1], (SearchHit{"b", "l", 2.0}));
  EXPECT_EQ(hits[2], (SearchHit{"a", "l", 5.0}));
  EXPECT_EQ(hits[3], (SearchHit{"c", "l", 9.0}));
}

TEST(Search, MatchesBruteForceOracle) {
  Gen g(65);
  for (int trial = 0; trial < 200; ++trial) {
    const Archive a = random_archive(g, 10, 8, 32);
    if (a.sets.size() < 2) continue;
    const auto& q = a.sets[static_cast<size_t>(g.integer(0, static_cast<int64_t>(a.sets.size()) - 1))];
    const size_t top = static_cast<size_t>(g.integer(1, 12));
    const std::optional<std::string> ex = g.coin() ? std::optional(q.wsi_id) : std::nullopt;
    std::optional<std::string_view> ex_view;
    if (ex) ex_view = *ex;
    EXPECT_EQ(search(a, q, top, ex_view, static_cast<unsigned>(g.integer(1, 4))),
              oracle::search(a, q, top, ex));
  }
}

TEST(BuildArchive, GroupsByFirstAppearance) {
  std::vector<FeatureVector> fv = {
      {"s2", {0, 0, 1, 8}, {1, 2, 3}},
      {"s1", {8, 0, 1, 8}, {3, 2, 1}},
      {"s2", {16, 0, 1, 8}, {1, 0, 1}},
  };
  const std::map<std::string, std::string> labels{{"s1", "A"}, {"s2", "B"}};
  const Archive a = build_archive(fv, labels);
  EXPECT_EQ(a.bits_per_barcode, 2U);
  ASSERT_EQ(a.sets.size(), 2U);
  EXPECT_EQ(a.sets[0].wsi_id, "s2");
  EXPECT_EQ(a.sets[0].label, "B");
  ASSERT_EQ(a.sets[0].barcodes.size(), 2U);
  EXPECT_EQ(to_string(a.sets[0].barcodes[0].code), "11");
  EXPECT_EQ(to_string(a.sets[0].barcodes[1].code), "01");
  EXPECT_EQ(a.sets[0].barcodes[1].patch, (PatchRef{16, 0, 1, 8}));
  EXPECT_EQ(a.barcode_count(), 3U);

  EXPECT_SPLICE_ERROR(build_archive(fv, {{"s1", "A"}}), ErrorCode::kInvalidInput);
  fv.push_back({"s1", {0, 8, 1, 8}, {1, 2}});
  EXPECT_SPLICE_ERROR(build_archive(fv, labels), ErrorCode::kInvalidInput);
}

// Byte-by-byte layout of a one-set, one-barcode archive.
TEST(ArchiveFormat, ExactLayout) {
  Archive a;
  a.bits_per_barcode = 10;
  a.sets = {BarcodeSet{"ab", "L", {{from_string("1000000001"), {0x01020304, 7, 32, 1024}}}}};
  const std::vector<uint8_t> want = {
      'S', 'P', 'L', 'B', 1,              // magic, version
      10, 0, 0, 0,                        // bits per barcode
      1, 0, 0, 0,                         // sets
      2, 0, 'a', 'b', 1, 0, 'L',          // id, label
      1, 0, 0, 0,                         // barcodes
      0x04, 0x03, 0x02, 0x01, 7, 0, 0, 0, // x0, y0
      32, 0, 0x00, 0x04,                  // level factor, size
      0x01, 0x02};                        // packed bits
  EXPECT_EQ(serialize_archive(a), want);
  EXPECT_EQ(serialized_set_size(a.sets[0], 10), want.size() - kArchiveHeaderBytes);
}

TEST(ArchiveFormat, RoundTripIsBitExact) {
  Gen g(66);
  TempDir dir;
  for (int trial = 0; trial < 20; ++trial) {
    Archive a = random_archive(g, 12, 20, 400);
    // Ids drawn with replacement may collide; keep the first of each.
    std::set<std::string> seen;
    std::erase_if(a.sets, [&](const BarcodeSet& s) { return !seen.insert(s.wsi_id).second; });
    const auto path = dir / ("a" + std::to_string(trial) + ".splb");
    save_archive(a, path);
    const Archive b = load_archive(path);
    EXPECT_EQ(b.bits_per_barcode, a.bits_per_barcode);
    EXPECT_EQ(b.sets, a.sets);
    EXPECT_EQ(serialize_archive(b), serialize_archive(a));
    std::ifstream in(path, std::ios::binary);
    const std::vector<uint8_t> on_disk((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(on_disk, serialize_archive(a));
    size_t expected_size = kArchiveHeaderBytes;
    for (const auto& s : a.sets) expected_size += serialized_set_size(s, a.bits_per_barcode);
    EXPECT_EQ(on_disk.size(), expected_size);
  }
  const Archive empty;
  save_archive(empty, dir / "empty.splb");
  EXPECT_TRUE(load_archive(dir / "empty.splb").sets.empty());
}

TEST(ArchiveFormat, CorruptionIsRejected) {
  Gen g(67);
  Archive a;
  a.bits_per_barcode = 13;
  a.sets = {BarcodeSet{"s", "l", {{testing::random_barcode(g, 13), {0, 0, 1, 8}}}},
            BarcodeSet{"t", "l", {{testing::random_barcode(g, 13), {8, 0, 1, 8}}}}};
  const auto bytes = serialize_archive(a);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_SPLICE_ERROR(deserialize_archive(bad_magic), ErrorCode::kFormat);
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_SPLICE_ERROR(deserialize_archive(bad_version), ErrorCode::kFormat);
  for (size_t n = 0; n < bytes.size(); ++n) {
    EXPECT_SPLICE_ERROR(deserialize_archive(std::span(bytes).first(n)), ErrorCode::kFormat);
  }
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_SPLICE_ERROR(deserialize_archive(trailing), ErrorCode::kFormat);
  auto pad = bytes;
  pad.back() |= 0x80;  // bit 15 of a 13-bit code
  EXPECT_SPLICE_ERROR(deserialize_archive(pad), ErrorCode::kFormat);
  // Second id "t" becomes "s".
  const size_t second_id = kArchiveHeaderBytes + serialized_set_size(a.sets[0], 13) + 2;
  auto dup = bytes;
  dup[second_id] = 's';
  EXPECT_SPLICE_ERROR(deserialize_archive(dup), ErrorCode::kFormat);

  TempDir dir;
  EXPECT_SPLICE_ERROR(load_archive(dir / "missing.splb"), ErrorCode::kIo);
  std::ofstream(dir / "junk.splb") << "JUNK";
  EXPECT_SPLICE_ERROR(load_archive(dir / "junk.splb"), ErrorCode::kFormat);
}

}  // namespace
}  // namespace splice
