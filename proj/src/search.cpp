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

#include "fieldann/search.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <numeric>

#include "fieldann/celldec.hpp"
#include "fieldann/errors.hpp"

namespace fieldann {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool hit_less(const Hit& a, const Hit& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

void check_budget(const SearchBudget& budget) {
  if (budget.k == 0) throw ParameterError("k must be at least 1");
  if (budget.visited_clusters == 0) {
    throw ParameterError("visited cluster budget must be at least 1");
  }
}

// Leader positions of `clustering`, best first, given a per-leader score
// where larger is better. Ties keep the lower cluster position.
std::vector<std::size_t> top_leaders(const std::vector<double>& score,
                                     std::size_t count) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return score[a] > score[b] ||
                             (score[a] == score[b] && a < b);
                    });
  order.resize(count);
  return order;
}

// Gathers distinct members of the chosen clusters and scores them.
class CandidateScorer {
 public:
  CandidateScorer(const Corpus& corpus, const WeightedQuery& q,
                  std::optional<DocId> exclude)
      : corpus_(corpus), q_(q), exclude_(exclude), seen_(corpus.size(), 0) {}

  void add_cluster(const Cluster& cluster) {
    for (DocId id : cluster.members) {
      if (exclude_ && id == *exclude_) continue;
      const auto idx = corpus_.index_of(id);
      if (!idx) {
        throw FormatError(fmt::format("index references unknown doc_id {}", id));
      }
      if (seen_[*idx]) continue;
      seen_[*idx] = 1;
      scored_.push_back({id, aggregate_distance(q_, corpus_.at(*idx))});
    }
  }

  std::vector<Hit> take(std::size_t k) {
    keep_top_k(scored_, k);
    return std::move(scored_);
  }
  std::size_t candidates() const { return scored_.size(); }

 private:
  const Corpus& corpus_;
  const WeightedQuery& q_;
  std::optional<DocId> exclude_;
  std::vector<char> seen_;
  std::vector<Hit> scored_;
};

void check_fields(const Corpus& corpus, const WeightedQuery& q) {
  if (q.fields.size() != corpus.field_count() ||
      q.weights.size() != corpus.field_count()) {
    throw DimensionError(fmt::format("query has {} fields, corpus has {}",
                                     q.fields.size(), corpus.field_count()));
  }
}

}  // namespace

void keep_top_k(std::vector<Hit>& scored, std::size_t k) {
  if (scored.size() > k) {
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end(),
                      hit_less);
    scored.resize(k);
  } else {
    std::sort(scored.begin(), scored.end(), hit_less);
  }
}

SearchResult exhaustive_search(const Corpus& corpus, const WeightedQuery& q,
                               std::size_t k, std::optional<DocId> exclude) {
  if (k == 0) throw ParameterError("k must be at least 1");
  check_fields(corpus, q);
  const auto start = Clock::now();
  std::vector<Hit> scored;
  scored.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    if (exclude && doc.id == *exclude) continue;
    scored.push_back({doc.id, aggregate_distance(q, doc)});
  }
  SearchResult result;
  result.stats.candidates_scanned = scored.size();
  keep_top_k(scored, k);
  result.hits = std::move(scored);
  result.stats.wall_time_s = seconds_since(start);
  return result;
}

std::vector<std::size_t> split_budget(std::size_t budget,
                                      const MultiIndex& index) {
  const std::size_t t = index.clusterings.size();
  std::vector<std::size_t> shares(t, 0);
  if (t == 0) return shares;
  for (std::size_t i = 0; i < t; ++i) {
    shares[i] = budget / t + (i < budget % t ? 1 : 0);
    shares[i] = std::min(shares[i], index.clusterings[i].clusters.size());
  }
  return shares;
}

SearchResult pruned_search_ours(const MultiIndex& index, const Corpus& corpus,
                                const WeightedQuery& q, SearchBudget budget,
                                std::optional<DocId> exclude) {
  if (index.scheme != Scheme::kOurs) {
    throw ParameterError("pruned_search_ours needs an index of scheme ours");
  }
  check_budget(budget);
  check_fields(corpus, q);
  const auto start = Clock::now();

  const NormalizedQuery nq = normalize_weighted_query(q);
  const auto shares = split_budget(budget.visited_clusters, index);
  CandidateScorer scorer(corpus, q, exclude);
  SearchResult result;
  for (std::size_t i = 0; i < index.clusterings.size(); ++i) {
    const auto& clusters = index.clusterings[i].clusters;
    std::vector<double> score(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      score[c] = block_similarity(nq.blocks, clusters[c].leader);
    }
    result.stats.leaders_scanned += clusters.size();
    for (std::size_t c : top_leaders(score, shares[i])) {
      scorer.add_cluster(clusters[c]);
      ++result.stats.clusters_visited;
    }
  }
  result.stats.candidates_scanned = scorer.candidates();
  result.hits = scorer.take(budget.k);
  result.stats.wall_time_s = seconds_since(start);
  return result;
}

SearchResult pruned_search_celldec(const MultiIndex& index,
                                   const Corpus& corpus, const WeightedQuery& q,
                                   SearchBudget budget,
                                   std::optional<DocId> exclude) {
  if (index.scheme == Scheme::kOurs) {
    throw ParameterError(
        "pruned_search_celldec needs an index of scheme celldec or pods07");
  }
  if (index.clusterings.size() != 4) {
    throw FormatError("region index must hold exactly 4 clusterings");
  }
  check_budget(budget);
  check_fields(corpus, q);
  const auto start = Clock::now();

  const auto offsets = composite_offsets(corpus);
  const auto [region, cq] = celldec_query_vector(q, index.params.theta, offsets);
  const auto& clusters = index.clusterings[region.index()].clusters;

  SearchResult result;
  std::vector<double> score(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    // smaller cosine distance ranks first
    score[c] = -cosine_distance(cq, clusters[c].leader.at(0));
  }
  result.stats.leaders_scanned = clusters.size();
  CandidateScorer scorer(corpus, q, exclude);
  for (std::size_t c : top_leaders(score, budget.visited_clusters)) {
    scorer.add_cluster(clusters[c]);
    ++result.stats.clusters_visited;
  }
  result.stats.candidates_scanned = scorer.candidates();
  result.hits = scorer.take(budget.k);
  result.stats.wall_time_s = seconds_since(start);
  return result;
}

SearchResult pruned_search(const MultiIndex& index, const Corpus& corpus,
                           const WeightedQuery& q, SearchBudget budget,
                           std::optional<DocId> exclude) {
  if (index.scheme == Scheme::kOurs) {
    return pruned_search_ours(index, corpus, q, budget, exclude);
  }
  return pruned_search_celldec(index, corpus, q, budget, exclude);
}

}  // namespace fieldann
