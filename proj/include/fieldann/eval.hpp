// Copyright 2026-present the fieldann project
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fieldann/index.hpp"
#include "fieldann/ingest.hpp"
#include "fieldann/search.hpp"

namespace fieldann {

inline constexpr std::size_t kDefaultK = 10;
inline constexpr std::size_t kDefaultQueryCount = 250;

// (0.33,0.33,0.34), (0.4,0.4,0.2), (0.2,0.4,0.4), (0.4,0.2,0.4),
// (0.2,0.6,0.2), (0.6,0.2,0.2), (0.2,0.2,0.6).
std::vector<WeightVector> default_weight_sets();

// |ids(result) ∩ ids(gt)|.
std::size_t competitive_recall(const SearchResult& result,
                               const SearchResult& gt);

// The k documents with the largest aggregate distance, descending (ties by
// lower doc id). Throws ParameterError when fewer than k documents remain
// after exclusion.
SearchResult farthest_set(const Corpus& corpus, const WeightedQuery& q,
                          std::size_t k,
                          std::optional<DocId> exclude = std::nullopt);

double total_distance(const SearchResult& result);

// (W - sum_A) / (W - sum_GT). 1.0 when the denominator vanishes (every
// document equidistant from the query).
double normalized_aggregate_goodness(const SearchResult& result,
                                     const SearchResult& gt, double farthest_sum);

// As above, but a result with fewer than k hits is charged the farthest-set
// distances for its missing slots, which keeps the value in [0, 1].
double normalized_aggregate_goodness(const SearchResult& result,
                                     const SearchResult& gt,
                                     const SearchResult& farthest);

struct QuerySet {
  std::vector<DocId> query_docs;
  std::vector<WeightVector> weight_sets;  // every query runs under each
  std::size_t k = kDefaultK;
};

// `count` distinct documents with at least one non-empty field, seeded.
QuerySet sample_query_set(const Corpus& corpus, std::size_t count,
                          std::vector<WeightVector> weight_sets, std::size_t k,
                          std::uint64_t seed);

struct EvalIndex {
  const MultiIndex* index = nullptr;
  double preprocessing_time_s = 0.0;
};

struct QueryRecord {
  std::size_t index_pos = 0;
  std::size_t weight_set = 0;
  std::size_t budget = 0;
  DocId query = 0;
  std::size_t recall = 0;
  double nag = 0.0;
  double time_s = 0.0;
  std::size_t candidates = 0;
};

struct EvalRow {
  std::string scheme;
  std::string weights;  // e.g. "0.6-0.2-0.2"
  std::size_t budget = 0;
  double mean_recall = 0.0;
  double mean_nag = 0.0;
  double mean_query_time_s = 0.0;
  double candidates_mean = 0.0;
};

struct IndexSummary {
  std::string scheme;
  IndexParams params;
  std::size_t total_clusters = 0;
  std::size_t index_bytes = 0;
  double preprocessing_time_s = 0.0;
};

struct EvalReport {
  std::size_t k = kDefaultK;
  std::size_t query_count = 0;
  std::vector<EvalRow> rows;  // index-major, then weight set, then budget
  std::vector<IndexSummary> indexes;
  std::vector<QueryRecord> records;  // same order as rows, queries inner
};

struct ExperimentOptions {
  // Compute each (query, weights) ground truth once and reuse it across
  // indexes and budgets.
  bool cache_ground_truth = true;
};

// Throws FingerprintMismatch if any index was built on another corpus.
EvalReport run_experiment(const Corpus& corpus, std::span<const EvalIndex> indexes,
                          const QuerySet& query_set,
                          std::span<const std::size_t> budgets,
                          ExperimentOptions options = {});

std::string format_weights(const WeightVector& w);

// Header: scheme,weights,budget,mean_recall,mean_nag,mean_query_time_s,
// candidates_mean
void write_report_csv(std::ostream& out, const EvalReport& report);
void write_report_summary_json(std::ostream& out, const EvalReport& report);

}  // namespace fieldann
