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

#include <optional>
#include <vector>

#include "fieldann/index.hpp"
#include "fieldann/ingest.hpp"
#include "fieldann/vecspace.hpp"

namespace fieldann {

struct SearchBudget {
  std::size_t visited_clusters = 1;  // total across all clusterings
  std::size_t k = 10;
};

struct Hit {
  DocId id = 0;
  double distance = 0.0;
  friend bool operator==(const Hit&, const Hit&) = default;
};

struct SearchStats {
  std::size_t candidates_scanned = 0;
  std::size_t leaders_scanned = 0;
  std::size_t clusters_visited = 0;
  double wall_time_s = 0.0;
};

struct SearchResult {
  std::vector<Hit> hits;  // ascending (distance, id), at most k
  SearchStats stats;
};

// Scores every document except `exclude` by aggregate_distance.
// Throws ParameterError for k == 0.
SearchResult exhaustive_search(const Corpus& corpus, const WeightedQuery& q,
                               std::size_t k,
                               std::optional<DocId> exclude = std::nullopt);

// Per-clustering cluster counts for a total budget: as even as possible,
// remainder to the earliest clusterings, each clamped to that clustering's
// size.
std::vector<std::size_t> split_budget(std::size_t budget,
                                      const MultiIndex& index);

// Multi-clustering pruning: leaders ranked by the normalized weighted query,
// candidates ranked by the true aggregate distance.
SearchResult pruned_search_ours(const MultiIndex& index, const Corpus& corpus,
                                const WeightedQuery& q, SearchBudget budget,
                                std::optional<DocId> exclude = std::nullopt);

// Region lookup, composite query against that region's leaders, then true
// aggregate distance on the candidates. `index` is a kCellDec or kPods07
// MultiIndex.
SearchResult pruned_search_celldec(const MultiIndex& index,
                                   const Corpus& corpus, const WeightedQuery& q,
                                   SearchBudget budget,
                                   std::optional<DocId> exclude = std::nullopt);

// Dispatches on index.scheme.
SearchResult pruned_search(const MultiIndex& index, const Corpus& corpus,
                           const WeightedQuery& q, SearchBudget budget,
                           std::optional<DocId> exclude = std::nullopt);

// Top k of `scored` by ascending (distance, id), in place.
void keep_top_k(std::vector<Hit>& scored, std::size_t k);

}  // namespace fieldann
