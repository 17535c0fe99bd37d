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

// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// usage: splice_acceptance [work_dir]
//   work_dir keeps curve.csv after the run (default: a fresh directory under
//   the system temp dir, removed afterwards). The corpus is always removed.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "splice/evaluation.hpp"
#include "splice/mosaic.hpp"
#include "splice/pipeline.hpp"
#include "splice/random.hpp"
#include "splice/synth.hpp"
#include "splice/text.hpp"
#include "support.hpp"

namespace splice {
namespace {

namespace fs = std::filesystem;
using testing::Gen;

// Pinned thresholds.
constexpr uint64_t kCorpusSeed = 7;
constexpr size_t kClasses = 3;
constexpr uint32_t kPerClass = 12;
constexpr double kSplicePercentile = 30.0;
constexpr double kMinMacroF1 = 0.90;
constexpr double kMaxPipelineSeconds = 120.0;
constexpr double kMaxCompression = 0.50;
constexpr double kCurveKs[] = {10, 20, 30, 40, 50};
constexpr double kTimeRatioTolerance = 0.25;
constexpr unsigned kTimingRepeats = 5;
constexpr size_t kSearchTop = 5;
constexpr int kOracleArchives = 50;
constexpr int kPartitionTrials = 200;
constexpr int kProseTrials = 400;
constexpr size_t kProseMaxPatches = 12;
constexpr int kMinMaxPairs = 100;
constexpr int kHammingTriples = 1000;
constexpr int kMosaicClusterings = 100;
constexpr int kArchiveRoundTrips = 20;
constexpr double kMetricsTolerance = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures without stopping at the first one.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " failed checks, first: " + first_};
  }

 private:
  size_t failures_ = 0;
  std::string first_;
};

bool throws_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

bool throws_format(const std::function<void()>& fn) { return throws_code(fn, ErrorCode::kFormat); }
bool throws_invalid(const std::function<void()>& fn) {
  return throws_code(fn, ErrorCode::kInvalidInput);
}

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// --- corpus experiment ------------------------------------------------------

struct Corpus {
  Manifest manifest;
  PipelineOptions options;
  unsigned jobs = 1;
  double generate_seconds = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PipelineOptions splice_options(double k) {
  PipelineOptions o;
  SpliceConfig::Params p;
  p.percentile_k = k;
  o.splice = SpliceConfig(p);
  return o;
}

Outcome criterion_retrieval(const Corpus& c, Archive* collage_archive) {
  const auto start = std::chrono::steady_clock::now();
  const auto features = embed_corpus(c.manifest, SelectionMethod::kSplice, c.options, c.jobs);
  *collage_archive = build_archive(features, c.manifest.labels());
  const std::vector<uint32_t> ns{1, 3};
  const auto loo = leave_one_out(*collage_archive, ns, {false, c.jobs});
  const auto classes = c.manifest.classes();
  const double f1_top1 = compute_metrics(loo.at(1), classes).macro_f1;
  const double f1_mv3 = compute_metrics(loo.at(3), classes).macro_f1;
  const double elapsed = c.generate_seconds + seconds_since(start);
  Check check;
  check.expect(f1_top1 >= kMinMacroF1, "top-1 macro F1 " + num(f1_top1));
  check.expect(f1_mv3 >= kMinMacroF1, "MV@3 macro F1 " + num(f1_mv3));
  check.expect(elapsed < kMaxPipelineSeconds, "pipeline took " + num(elapsed) + " s");
  return check.outcome("top-1 macro F1 " + num(f1_top1) + ", MV@3 macro F1 " + num(f1_mv3) +
                       " (min " + num(kMinMacroF1) + "); pipeline " + num(elapsed, 3) +
                       " s incl. corpus generation (max " + num(kMaxPipelineSeconds) + ")");
}

Outcome criterion_compression(const PercentileCurve& curve, const fs::path& csv) {
  const size_t k50 = std::find(curve.ks.begin(), curve.ks.end(), 50.0) - curve.ks.begin();
  double fraction_sum = 0.0;
  double worst = 0.0;
  double tissue_sum = 0.0;
  for (size_t s = 0; s < curve.wsi_ids.size(); ++s) {
    const double f =
        static_cast<double>(curve.collage_sizes[s][k50]) / std::max(1U, curve.tissue_patches[s]);
    fraction_sum += f;
    worst = std::max(worst, f);
    tissue_sum += curve.tissue_patches[s];
  }
  const double n = static_cast<double>(curve.wsi_ids.size());
  const double mean_fraction = fraction_sum / n;
  write_text_file(csv, curve_to_csv(curve));
  Check check;
  check.expect(mean_fraction <= kMaxCompression, "mean fraction " + num(mean_fraction));
  return check.outcome("k=50 mean collage " + num(curve.mean_size(k50)) + " of " +
                       num(tissue_sum / n) + " tissue patches per WSI, mean fraction " +
                       num(mean_fraction) + " (max " + num(kMaxCompression) + "), worst slide " +
                       num(worst) + "; curve written to " + csv.string());
}

Outcome criterion_trend(const PercentileCurve& curve) {
  Check check;
  std::string means;
  for (size_t i = 0; i < curve.ks.size(); ++i) {
    means += (i ? ", " : "") + num(curve.ks[i]) + ":" + num(curve.mean_size(i));
    if (i > 0) {
      check.expect(curve.mean_size(i) <= curve.mean_size(i - 1),
                   "mean rises from k=" + num(curve.ks[i - 1]) + " to k=" + num(curve.ks[i]));
    }
  }
  return check.outcome("corpus-mean collage size by k {" + means + "}");
}

Outcome criterion_efficiency(const Corpus& c, const Archive& collage) {
  PipelineOptions lattice_opts = c.options;
  const auto lattice_features = embed_corpus(c.manifest, SelectionMethod::kLattice, lattice_opts, c.jobs);
  const Archive lattice = build_archive(lattice_features, c.manifest.labels());
  // Single-threaded sweeps keep the timing free of scheduling noise.
  const double t_collage = time_leave_one_out(collage, kSearchTop, kTimingRepeats, 1);
  const double t_lattice = time_leave_one_out(lattice, kSearchTop, kTimingRepeats, 1);
  const double count_ratio =
      static_cast<double>(collage.barcode_count()) / static_cast<double>(lattice.barcode_count());
  const double time_ratio = t_collage / t_lattice;

  // Pairwise Hamming comparisons per sweep, which is what the search scales with.
  const auto comparisons = [](const Archive& a) {
    double total = 0.0;
    for (const auto& q : a.sets)
      for (const auto& t : a.sets)
        if (&q != &t) total += static_cast<double>(q.barcodes.size()) * t.barcodes.size();
    return total;
  };
  const double comparison_ratio = comparisons(collage) / comparisons(lattice);

  Check check;
  check.expect(t_collage <= t_lattice, "collage search slower than lattice search");
  check.expect(std::abs(time_ratio / count_ratio - 1.0) <= kTimeRatioTolerance,
               "time ratio " + num(time_ratio) + " outside +-" + num(kTimeRatioTolerance * 100) +
                   "% of barcode-count ratio " + num(count_ratio));
  return check.outcome("LOO sweep " + num(t_collage * 1e3) + " ms (collage, " +
                       std::to_string(collage.barcode_count()) + " barcodes) vs " +
                       num(t_lattice * 1e3) + " ms (lattice, " +
                       std::to_string(lattice.barcode_count()) + " barcodes); time ratio " +
                       num(time_ratio) + ", barcode-count ratio " + num(count_ratio) +
                       ", pairwise-comparison ratio " + num(comparison_ratio));
}

// --- property criteria ------------------------------------------------------

Archive random_archive(Gen& g, size_t max_sets, size_t max_codes, uint32_t max_bits) {
  Archive a;
  a.bits_per_barcode = static_cast<uint32_t>(g.integer(1, max_bits));
  const size_t n_sets = static_cast<size_t>(g.integer(1, static_cast<int64_t>(max_sets)));
  for (size_t s = 0; s < n_sets; ++s) {
    BarcodeSet set{"w" + std::to_string(s), "c" + std::to_string(g.integer(0, 2)), {}};
    const auto n = static_cast<size_t>(g.integer(1, static_cast<int64_t>(max_codes)));
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

Outcome criterion_search_oracle() {
  Gen g(4001);
  Check check;
  size_t rankings = 0;
  for (int trial = 0; trial < kOracleArchives; ++trial) {
    const Archive a = random_archive(g, 10, 8, 32);
    for (const auto& q : a.sets) {
      const size_t all = a.sets.size();
      check.expect(search(a, q, all) == oracle::search(a, q, all, std::nullopt),
                   "full ranking differs in archive " + std::to_string(trial));
      ++rankings;
      if (all > 1) {
        check.expect(search(a, q, all, q.wsi_id) == oracle::search(a, q, all, q.wsi_id),
                     "leave-one-out ranking differs in archive " + std::to_string(trial));
        ++rankings;
      }
    }
  }
  return check.outcome(std::to_string(rankings) + " full rankings over " +
                       std::to_string(kOracleArchives) + " random micro-archives match brute force");
}

SpliceConfig config_k(double k) {
  SpliceConfig::Params p;
  p.percentile_k = k;
  return SpliceConfig(p);
}

Outcome criterion_partition() {
  Gen g(5001);
  Check check;
  for (int trial = 0; trial < kPartitionTrials; ++trial) {
    const auto n = static_cast<size_t>(g.integer(1, 150));
    const auto ps = testing::random_described(g, n, 8, static_cast<size_t>(g.integer(1, 50)));
    const Collage c = splice_select(ps, config_k(g.real(1.0, 99.0)), "w");
    size_t total = c.entries.size();
    for (const auto& e : c.entries) total += e.n_excluded;
    check.expect(total == n, "partition broken at trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < kProseTrials; ++trial) {
    const auto n = static_cast<size_t>(g.integer(1, kProseMaxPatches));
    const auto ps = testing::random_described(g, n, 8, static_cast<size_t>(g.integer(1, 12)));
    const double k = g.real(1.0, 99.0);
    check.expect(splice_select(ps, config_k(k), "w").patches() ==
                     oracle::splice_references(ps, k, SpliceConfig().dup_epsilon()),
                 "prose oracle differs at trial " + std::to_string(trial));
  }
  return check.outcome("partition held on " + std::to_string(kPartitionTrials) +
                       " random descriptor sets; prose re-implementation matched on " +
                       std::to_string(kProseTrials) + " sets of n <= " +
                       std::to_string(kProseMaxPatches));
}

Outcome criterion_minmax() {
  Gen g(6001);
  Check check;
  const std::vector<std::function<double(double)>> transforms = {
      [](double x) { return std::exp(x); },       [](double x) { return x * x * x; },
      [](double x) { return std::atan(x); },      [](double x) { return 2.0 * x + 7.0; },
      [](double x) { return std::cbrt(x) + x; },
  };
  for (int trial = 0; trial < kMinMaxPairs; ++trial) {
    const auto d = static_cast<size_t>(g.integer(2, 400));
    std::vector<double> f(d);
    for (auto& v : f) v = g.coin(0.1) ? 0.5 : g.real(-3, 3);
    std::vector<double> tf(d);
    const auto& t = transforms[static_cast<size_t>(g.integer(0, 4))];
    for (size_t i = 0; i < d; ++i) tf[i] = t(f[i]);
    const Barcode b = minmax_binarize(f);
    check.expect(b.size() == d - 1, "length " + std::to_string(b.size()) + " for d=" + std::to_string(d));
    check.expect(b == minmax_binarize(tf), "transform changed the barcode");

    std::vector<double> inc(d);
    double x = g.real(-5, 5);
    for (auto& v : inc) v = (x += g.real(1e-6, 2.0));
    const Barcode ones = minmax_binarize(inc);
    for (uint32_t i = 0; i < ones.size(); ++i) check.expect(ones.test(i), "increasing gave a zero bit");
  }
  return check.outcome(std::to_string(kMinMaxPairs) +
                       " (vector, monotone transform) pairs invariant; increasing vectors all-ones; "
                       "length d-1 throughout");
}

Outcome criterion_hamming() {
  Gen g(7001);
  Check check;
  for (int trial = 0; trial < kHammingTriples; ++trial) {
    const auto bits = static_cast<uint32_t>(g.integer(1, 512));
    const Barcode a = testing::random_barcode(g, bits);
    const Barcode b = testing::random_barcode(g, bits);
    const Barcode c = testing::random_barcode(g, bits);
    check.expect(hamming(a, a) == 0, "identity");
    check.expect((hamming(a, b) == 0) == (a == b), "identity of indiscernibles");
    check.expect(hamming(a, b) == hamming(b, a), "symmetry");
    check.expect(hamming(a, c) <= hamming(a, b) + hamming(b, c), "triangle inequality");
    check.expect(hamming(a, b) == oracle::hamming(a, b), "popcount differs from per-bit count");
  }
  return check.outcome(std::to_string(kHammingTriples) +
                       " random triples satisfy identity, symmetry and triangle inequality; "
                       "popcount equals per-bit count");
}

std::vector<DescribedPatch> grouped(Gen& g, const std::vector<size_t>& sizes) {
  std::vector<DescribedPatch> out;
  size_t index = 0;
  for (size_t grp = 0; grp < sizes.size(); ++grp) {
    for (size_t m = 0; m < sizes[grp]; ++m) {
      std::vector<double> v(27, 0.0);
      v[grp % 8] = 1.0;
      v[8 + grp / 8] = 1.0;
      v[16] = 1.0;
      v[24] = g.real(0.0, 0.01);
      const auto cx = static_cast<uint32_t>(index % 23);
      const auto cy = static_cast<uint32_t>(index / 23);
      out.emplace_back(PatchRef{cx * 128, cy * 128, 4, 32}, ColorDescriptor(8, v));
      ++index;
    }
  }
  return out;
}

Outcome criterion_mosaic() {
  Gen g(8001);
  Check check;
  const MosaicConfig defaults;
  check.expect(defaults.params().color_k == 9 && defaults.params().select_fraction == 0.05,
               "defaults are not color_k=9, fraction=0.05");
  for (int trial = 0; trial < kMosaicClusterings; ++trial) {
    std::vector<size_t> sizes(static_cast<size_t>(g.integer(1, 9)));
    for (auto& s : sizes) s = static_cast<size_t>(g.integer(1, 80));
    const auto ps = grouped(g, sizes);
    MosaicConfig::Params p;
    p.seed = static_cast<uint64_t>(trial);
    const Mosaic m = mosaic_select(ps, MosaicConfig(p), "w");

    std::vector<std::vector<double>> points;
    for (const auto& [ref, d] : ps) points.emplace_back(d.values().begin(), d.values().end());
    const auto color = kmeans(points, p.color_k, {p.max_iters, p.tol, p.seed});
    std::map<uint32_t, size_t> members;
    std::map<uint32_t, size_t> selected;
    for (const uint32_t a : color.assignments) ++members[a];
    for (const auto& e : m.entries) ++selected[e.color_cluster];
    for (const auto& [cluster, count] : members) {
      const size_t want =
          std::max<size_t>(1, static_cast<size_t>(std::ceil(0.05 * static_cast<double>(count) - 1e-9)));
      check.expect(selected[cluster] == want, "cluster of " + std::to_string(count) + " yielded " +
                                                  std::to_string(selected[cluster]));
    }
  }
  const Mosaic nine = mosaic_select(grouped(g, std::vector<size_t>(9, 1)), MosaicConfig(), "w");
  check.expect(nine.entries.size() == 9, "singleton clusters gave " + std::to_string(nine.entries.size()));
  return check.outcome("max(1, ceil(0.05 m)) per color cluster on " +
                       std::to_string(kMosaicClusterings) + " random clusterings; nine singleton "
                       "clusters give " + std::to_string(nine.entries.size()) + " patches");
}

Outcome criterion_archive() {
  Gen g(10001);
  Check check;
  const fs::path dir = fs::temp_directory_path() / ("splice_accept_archive_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  size_t pad_checked = 0;
  for (int trial = 0; trial < kArchiveRoundTrips; ++trial) {
    const Archive a = random_archive(g, 12, 16, 300);
    const fs::path path = dir / ("a" + std::to_string(trial) + ".splb");
    save_archive(a, path);
    const Archive b = load_archive(path);
    check.expect(b.bits_per_barcode == a.bits_per_barcode && b.sets == a.sets, "round trip differs");
    const auto bytes = serialize_archive(a);
    check.expect(serialize_archive(b) == bytes, "re-serialization differs");

    // Pad bits on disk are zero, and a set pad bit is refused.
    if (a.bits_per_barcode % 8 != 0) {
      ++pad_checked;
      const uint8_t pad_mask = static_cast<uint8_t>(0xFF << (a.bits_per_barcode % 8));
      check.expect((bytes.back() & pad_mask) == 0, "pad bits set on disk");
      auto dirty = bytes;
      dirty.back() |= pad_mask;
      check.expect(throws_format([&] { deserialize_archive(dirty); }), "set pad bit accepted");
    }
    auto magic = bytes;
    magic[1] ^= 0x20;
    check.expect(throws_format([&] { deserialize_archive(magic); }), "bad magic accepted");
    const auto cut = static_cast<size_t>(g.integer(0, static_cast<int64_t>(bytes.size()) - 1));
    check.expect(throws_format([&] { deserialize_archive(std::span(bytes).first(cut)); }),
                 "truncated archive accepted");
    auto extra = bytes;
    extra.push_back(0);
    check.expect(throws_format([&] { deserialize_archive(extra); }), "trailing bytes accepted");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return check.outcome(std::to_string(kArchiveRoundTrips) + " random archives bit-exact after save/load (" +
                       std::to_string(pad_checked) +
                       " with pad bits verified); corrupted files raise FormatError");
}

Outcome criterion_metrics() {
  Check check;
  const auto vr = [](const std::string& t, std::optional<std::string> p) {
    return VoteResult{"q", t, {}, std::move(p)};
  };
  const std::vector<std::string> classes{"A", "B"};
  const std::vector<VoteResult> rows{vr("A", "A"), vr("A", "B"), vr("B", "B"), vr("B", "B")};
  const auto m = compute_metrics(rows, classes);
  const auto near = [&](double got, double want, const std::string& what) {
    check.expect(std::abs(got - want) <= kMetricsTolerance, what + " = " + num(got, 12));
  };
  near(m.accuracy, 0.75, "accuracy");
  near(m.per_class[0].precision, 1.0, "precision A");
  near(m.per_class[0].recall, 0.5, "recall A");
  near(m.per_class[0].f1, 2.0 / 3.0, "F1 A");
  near(m.per_class[1].precision, 2.0 / 3.0, "precision B");
  near(m.per_class[1].recall, 1.0, "recall B");
  near(m.per_class[1].f1, 0.8, "F1 B");
  near(m.macro_f1, 11.0 / 15.0, "macro F1");

  const std::vector<VoteResult> abstain{vr("A", std::nullopt), vr("B", "B")};
  const auto ma = compute_metrics(abstain, classes);
  near(ma.accuracy, 0.5, "accuracy with abstention");
  near(ma.per_class[0].recall, 0.0, "recall A with abstention");
  near(ma.macro_f1, 0.5, "macro F1 with abstention");

  struct VoteCase {
    std::vector<std::string> labels;
    size_t n;
    std::optional<std::string> want;
  };
  const std::vector<VoteCase> votes = {
      {{"a"}, 1, "a"},
      {{"b", "a", "a"}, 1, "b"},
      {{"a", "b", "a"}, 3, "a"},
      {{"a", "b", "c"}, 3, std::nullopt},
      {{"a", "a"}, 3, "a"},
      {{"a"}, 3, std::nullopt},
      {{"a", "b", "a", "b", "a"}, 5, "a"},
      {{"a", "a", "b", "b", "c"}, 5, std::nullopt},
      {{"a", "b", "c", "a"}, 5, std::nullopt},
      {{"a", "b", "c", "d", "e", "a", "a"}, 5, std::nullopt},
  };
  for (const auto& v : votes) {
    check.expect(majority_vote(v.labels, v.n) == v.want, "vote case n=" + std::to_string(v.n));
  }
  check.expect(throws_invalid([] { majority_vote(std::vector<std::string>{}, 3); }),
               "empty vote accepted");
  return check.outcome("2-class fixture within " + num(kMetricsTolerance) + " (macro F1 " +
                       num(m.macro_f1, 10) + "); " + std::to_string(votes.size()) +
                       " majority-vote quota cases for n in {1,3,5}");
}

}  // namespace
}  // namespace splice

int main(int argc, char** argv) {
  using namespace splice;
  namespace fs = std::filesystem;

  const bool keep = argc > 1;
  const fs::path work = keep ? fs::path(argv[1])
                             : fs::temp_directory_path() /
                                   ("splice_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(work);

  std::map<int, Outcome> results;
  const auto record = [&](int id, const std::function<Outcome()>& fn) {
    try {
      results[id] = fn();
    } catch (const std::exception& e) {
      results[id] = {false, std::string("exception: ") + e.what()};
    }
  };

  Corpus corpus;
  corpus.jobs = std::max(1U, std::thread::hardware_concurrency());
  corpus.options = splice_options(kSplicePercentile);
  const auto start = std::chrono::steady_clock::now();
  try {
    SynthSpec spec;
    spec.classes = default_synth_classes(kClasses);
    spec.per_class = kPerClass;
    spec.seed = kCorpusSeed;
    corpus.manifest = generate_corpus(spec, work / "corpus", corpus.jobs);
    corpus.generate_seconds = seconds_since(start);
  } catch (const std::exception& e) {
    for (int id : {1, 2, 3, 9}) results[id] = {false, std::string("corpus: ") + e.what()};
  }

  if (!corpus.manifest.rows.empty()) {
    Archive collage_archive;
    record(1, [&] { return criterion_retrieval(corpus, &collage_archive); });
    PercentileCurve curve;
    record(2, [&] {
      curve = percentile_curve(corpus.manifest, kCurveKs, PipelineOptions{}, corpus.jobs);
      return criterion_compression(curve, work / "curve.csv");
    });
    record(3, [&] { return criterion_trend(curve); });
    record(9, [&] {
      if (collage_archive.sets.empty()) return Outcome{false, "no collage archive from criterion 1"};
      return criterion_efficiency(corpus, collage_archive);
    });
  }
  record(4, criterion_search_oracle);
  record(5, criterion_partition);
  record(6, criterion_minmax);
  record(7, criterion_hamming);
  record(8, criterion_mosaic);
  record(10, criterion_archive);
  record(11, criterion_metrics);

  int failed = 0;
  for (const auto& [id, r] : results) {
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail
              << "\n";
    failed += r.pass ? 0 : 1;
  }
  std::cout << (results.size() - static_cast<size_t>(failed)) << "/" << results.size()
            << " criteria passed\n";
  std::error_code ec;
  fs::remove_all(keep ? work / "corpus" : work, ec);
  return failed == 0 ? 0 : 1;
}
