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

#include "splice/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "splice/error.hpp"
#include "splice/parallel.hpp"
#include "splice/text.hpp"

namespace splice {

namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

std::optional<std::string> majority_vote(std::span<const std::string> labels, size_t n) {
  if (labels.empty()) throw_invalid("majority vote over an empty list");
  if (n == 0) throw_invalid("majority vote needs n >= 1");
  const size_t quota = n / 2 + 1;
  const size_t considered = std::min(n, labels.size());
  std::map<std::string_view, size_t> counts;
  for (size_t i = 0; i < considered; ++i) {
    if (++counts[labels[i]] >= quota) return labels[i];
  }
  return std::nullopt;
}

std::map<uint32_t, std::vector<VoteResult>> leave_one_out(const Archive& archive,
                                                          std::span<const uint32_t> n_values,
                                                          const LooOptions& options) {
  if (archive.sets.size() < 2) throw_invalid("leave-one-out needs at least two barcode sets");
  if (n_values.empty()) throw_invalid("leave-one-out needs at least one n");
  uint32_t max_n = 0;
  for (const uint32_t n : n_values) {
    if (n == 0) throw_invalid("n values must be positive");
    max_n = std::max(max_n, n);
  }

  std::vector<std::vector<SearchHit>> ranked(archive.sets.size());
  parallel_for(archive.sets.size(), options.jobs, [&](size_t i) {
    const BarcodeSet& query = archive.sets[i];
    ranked[i] = search(archive, query, max_n, query.wsi_id);
  });

  std::map<uint32_t, std::vector<VoteResult>> out;
  for (const uint32_t n : n_values) {
    auto& results = out[n];
    if (!results.empty()) continue;
    for (size_t i = 0; i < archive.sets.size(); ++i) {
      VoteResult vr;
      vr.query_id = archive.sets[i].wsi_id;
      vr.true_label = archive.sets[i].label;
      const size_t keep = std::min<size_t>(n, ranked[i].size());
      vr.retrieved.assign(ranked[i].begin(), ranked[i].begin() + static_cast<std::ptrdiff_t>(keep));
      std::vector<std::string> labels;
      labels.reserve(keep);
      for (const auto& hit : vr.retrieved) labels.push_back(hit.label);
      vr.predicted = majority_vote(labels, n);
      if (!vr.predicted && options.abstain_falls_back_to_top1) vr.predicted = labels.front();
      results.push_back(std::move(vr));
    }
  }
  return out;
}

MetricsReport compute_metrics(std::span<const VoteResult> results,
                              std::span<const std::string> classes) {
  std::map<std::string_view, size_t> index;
  for (const auto& c : classes) index.emplace(c, index.size());
  std::vector<size_t> tp(classes.size(), 0);
  std::vector<size_t> fp(classes.size(), 0);
  std::vector<size_t> fn(classes.size(), 0);
  std::vector<size_t> support(classes.size(), 0);

  MetricsReport report;
  size_t correct = 0;
  for (const auto& r : results) {
    const auto truth = index.find(r.true_label);
    if (truth == index.end()) throw_invalid("unknown true label '" + r.true_label + "'");
    ++support[truth->second];
    if (!r.predicted) {
      ++report.abstained;
      ++fn[truth->second];
      continue;
    }
    const auto pred = index.find(*r.predicted);
    if (pred == index.end()) throw_invalid("unknown predicted label '" + *r.predicted + "'");
    if (pred->second == truth->second) {
      ++tp[truth->second];
      ++correct;
    } else {
      ++fp[pred->second];
      ++fn[truth->second];
    }
  }

  report.total = results.size();
  report.accuracy = safe_ratio(static_cast<double>(correct), static_cast<double>(results.size()));
  for (size_t c = 0; c < classes.size(); ++c) {
    ClassMetrics m;
    m.label = classes[c];
    m.support = support[c];
    m.precision = safe_ratio(static_cast<double>(tp[c]), static_cast<double>(tp[c] + fp[c]));
    m.recall = safe_ratio(static_cast<double>(tp[c]), static_cast<double>(tp[c] + fn[c]));
    m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
    report.per_class.push_back(std::move(m));
  }
  if (!classes.empty()) {
    const auto k = static_cast<double>(classes.size());
    report.macro_precision /= k;
    report.macro_recall /= k;
    report.macro_f1 /= k;
  }
  return report;
}

double time_leave_one_out(const Archive& archive, size_t top_n, unsigned repeats, unsigned jobs) {
  if (archive.sets.size() < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned rep = 0; rep < std::max(1U, repeats); ++rep) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> sink(archive.sets.size());
    parallel_for(archive.sets.size(), jobs, [&](size_t i) {
      const auto hits = search(archive, archive.sets[i], top_n, archive.sets[i].wsi_id);
      sink[i] = hits.front().distance;
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

AccountingReport accounting(const Archive& archive, size_t feature_dim, unsigned timing_repeats,
                            unsigned jobs) {
  AccountingReport report;
  for (const auto& set : archive.sets) {
    report.wsi_ids.push_back(set.wsi_id);
    report.patch_counts.push_back(set.barcodes.size());
    report.barcode_bytes.push_back(serialized_set_size(set, archive.bits_per_barcode));
    report.embedding_bytes.push_back(set.barcodes.size() * feature_dim * sizeof(float));
    report.total_patches += set.barcodes.size();
  }
  if (archive.sets.empty()) return report;

  const auto n = static_cast<double>(archive.sets.size());
  report.patches_mean = static_cast<double>(report.total_patches) / n;
  double var = 0.0;
  for (const size_t c : report.patch_counts) {
    const double d = static_cast<double>(c) - report.patches_mean;
    var += d * d;
  }
  report.patches_std = std::sqrt(var / n);
  report.archive_bytes = kArchiveHeaderBytes;
  for (const size_t b : report.barcode_bytes) report.archive_bytes += b;
  if (timing_repeats > 0 && archive.sets.size() >= 2) {
    report.search_seconds = time_leave_one_out(archive, 5, timing_repeats, jobs);
  }
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["parameters"] = report.parameters;
  j["classes"] = report.classes;
  auto& metrics = j["metrics"];
  metrics = nlohmann::ordered_json::array();
  for (const auto& [n, m] : report.metrics) {
    nlohmann::ordered_json row;
    row["n"] = n;
    row["accuracy"] = m.accuracy;
    row["macro_precision"] = m.macro_precision;
    row["macro_recall"] = m.macro_recall;
    row["macro_f1"] = m.macro_f1;
    row["total"] = m.total;
    row["abstained"] = m.abstained;
    auto& per_class = row["per_class"];
    per_class = nlohmann::ordered_json::array();
    for (const auto& c : m.per_class) {
      per_class.push_back({{"label", c.label},
                           {"precision", c.precision},
                           {"recall", c.recall},
                           {"f1", c.f1},
                           {"support", c.support}});
    }
    metrics.push_back(std::move(row));
  }
  const auto& a = report.accounting;
  auto& acc = j["accounting"];
  acc["total_patches"] = a.total_patches;
  acc["patches_per_wsi_mean"] = a.patches_mean;
  acc["patches_per_wsi_std"] = a.patches_std;
  acc["archive_bytes"] = a.archive_bytes;
  acc["search_seconds"] =
      a.search_seconds ? nlohmann::ordered_json(*a.search_seconds) : nlohmann::ordered_json();
  auto& per_wsi = acc["per_wsi"];
  per_wsi = nlohmann::ordered_json::array();
  for (size_t i = 0; i < a.wsi_ids.size(); ++i) {
    per_wsi.push_back({{"wsi_id", a.wsi_ids[i]},
                       {"patches", a.patch_counts[i]},
                       {"barcode_bytes", a.barcode_bytes[i]},
                       {"embedding_bytes", a.embedding_bytes[i]}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvaluationReport& report) {
  const auto& a = report.accounting;
  size_t barcode_total = 0;
  size_t embedding_total = 0;
  for (const size_t b : a.barcode_bytes) barcode_total += b;
  for (const size_t b : a.embedding_bytes) embedding_total += b;

  std::string param;
  for (const auto& [key, value] : report.parameters) {
    if (!param.empty()) param += ';';
    param += key + "=" + value;
  }

  std::ostringstream out;
  out << "method,param,n_patches,patches_per_wsi_mean,patches_per_wsi_std,barcode_storage_kb,"
         "embedding_storage_kb,search_time_sec,n,accuracy,macro_precision,macro_recall,macro_f1\n";
  for (const auto& [n, m] : report.metrics) {
    out << report.method << ',' << param << ',' << a.total_patches << ','
        << format_double(a.patches_mean) << ',' << format_double(a.patches_std) << ','
        << format_double(static_cast<double>(barcode_total) / 1024.0) << ','
        << format_double(static_cast<double>(embedding_total) / 1024.0) << ','
        << (a.search_seconds ? format_double(*a.search_seconds) : std::string()) << ',' << n << ',' << format_double(m.accuracy) << ','
        << format_double(m.macro_precision) << ',' << format_double(m.macro_recall) << ','
        << format_double(m.macro_f1) << '\n';
  }
  return out.str();
}

}  // namespace splice
