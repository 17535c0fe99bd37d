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

/// @file evaluation.hpp
/// @brief Leave-one-out retrieval with majority voting, metrics and
///        storage/time accounting.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splice/barcode.hpp"

namespace splice {

/// Label held by at least floor(n/2)+1 of the first n labels, or nullopt
/// (abstain). Fewer than n labels still need the full quota.
std::optional<std::string> majority_vote(std::span<const std::string> labels, size_t n);

struct VoteResult {
  std::string query_id;
  std::string true_label;
  std::vector<SearchHit> retrieved;
  std::optional<std::string> predicted;  // nullopt == abstain

  [[nodiscard]] bool correct() const noexcept { return predicted && *predicted == true_label; }
};

struct LooOptions {
  /// When no label reaches the quota, predict the top-1 label instead of
  /// abstaining.
  bool abstain_falls_back_to_top1 = false;
  unsigned jobs = 1;
};

/// Queries every set against the archive without itself; one VoteResult per
/// (n, query), queries in archive order.
std::map<uint32_t, std::vector<VoteResult>> leave_one_out(const Archive& archive,
                                                          std::span<const uint32_t> n_values,
                                                          const LooOptions& options = {});

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t support = 0;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  size_t total = 0;
  size_t abstained = 0;
};

/// Abstentions count as wrong and as false negatives of the true class only.
/// 0/0 ratios are 0. Macro values are unweighted class means.
MetricsReport compute_metrics(std::span<const VoteResult> results,
                              std::span<const std::string> classes);

struct AccountingReport {
  std::vector<std::string> wsi_ids;
  std::vector<size_t> patch_counts;
  /// Bytes each set occupies in the archive file.
  std::vector<size_t> barcode_bytes;
  /// Bytes of the real-valued embeddings behind the barcodes (float32).
  std::vector<size_t> embedding_bytes;
  size_t total_patches = 0;
  double patches_mean = 0.0;
  double patches_std = 0.0;  // population
  size_t archive_bytes = 0;  // whole serialized archive
  /// Wall-clock seconds of one leave-one-out search sweep; unset when
  /// timing was not requested, which keeps reports reproducible.
  std::optional<double> search_seconds;
};

/// Patch/storage accounting. With `timing_repeats` > 0 also times a full
/// leave-one-out search sweep (best of that many runs, monotonic clock).
AccountingReport accounting(const Archive& archive, size_t feature_dim,
                            unsigned timing_repeats = 0, unsigned jobs = 1);

/// Seconds for one leave-one-out search sweep over `archive` (best of `repeats`).
double time_leave_one_out(const Archive& archive, size_t top_n, unsigned repeats = 1,
                          unsigned jobs = 1);

/// Everything one `eval loo` run produces.
struct EvaluationReport {
  std::string method;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> classes;
  std::map<uint32_t, MetricsReport> metrics;  // keyed by n
  AccountingReport accounting;
};

std::string report_to_json(const EvaluationReport& report);
/// Table-4 style columns followed by metric columns, one row per n.
std::string report_to_csv(const EvaluationReport& report);

}  // namespace splice
