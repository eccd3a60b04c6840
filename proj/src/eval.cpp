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

#include "fieldann/eval.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "fieldann/errors.hpp"
#include "fieldann/random.hpp"
#include "json.hpp"

namespace fieldann {

std::vector<WeightVector> default_weight_sets() {
  return {
      WeightVector({0.33, 0.33, 0.34}), WeightVector({0.4, 0.4, 0.2}),
      WeightVector({0.2, 0.4, 0.4}),    WeightVector({0.4, 0.2, 0.4}),
      WeightVector({0.2, 0.6, 0.2}),    WeightVector({0.6, 0.2, 0.2}),
      WeightVector({0.2, 0.2, 0.6}),
  };
}

std::size_t competitive_recall(const SearchResult& result,
                               const SearchResult& gt) {
  std::unordered_set<DocId> truth;
  for (const auto& h : gt.hits) truth.insert(h.id);
  std::size_t count = 0;
  std::unordered_set<DocId> counted;
  for (const auto& h : result.hits) {
    if (truth.contains(h.id) && counted.insert(h.id).second) ++count;
  }
  return count;
}

SearchResult farthest_set(const Corpus& corpus, const WeightedQuery& q,
                          std::size_t k, std::optional<DocId> exclude) {
  const bool excluded = exclude && corpus.index_of(*exclude).has_value();
  const std::size_t available = corpus.size() - (excluded ? 1 : 0);
  if (k == 0 || k > available) {
    throw ParameterError(fmt::format(
        "farthest set size {} not in [1, {}]", k, available));
  }
  std::vector<Hit> scored;
  scored.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    if (exclude && doc.id == *exclude) continue;
    scored.push_back({doc.id, aggregate_distance(q, doc)});
  }
  auto farther = [](const Hit& a, const Hit& b) {
    return a.distance > b.distance || (a.distance == b.distance && a.id < b.id);
  };
  std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), farther);
  scored.resize(k);
  SearchResult result;
  result.hits = std::move(scored);
  result.stats.candidates_scanned = available;
  return result;
}

double total_distance(const SearchResult& result) {
  double sum = 0.0;
  for (const auto& h : result.hits) sum += h.distance;
  return sum;
}

namespace {

constexpr double kDegenerateDenominator = 1e-12;

double nag_ratio(double farthest_sum, double result_sum, double gt_sum) {
  const double denom = farthest_sum - gt_sum;
  if (denom <= kDegenerateDenominator) return 1.0;
  return (farthest_sum - result_sum) / denom;
}

}  // namespace

double normalized_aggregate_goodness(const SearchResult& result,
                                     const SearchResult& gt,
                                     double farthest_sum) {
  return nag_ratio(farthest_sum, total_distance(result), total_distance(gt));
}

double normalized_aggregate_goodness(const SearchResult& result,
                                     const SearchResult& gt,
                                     const SearchResult& farthest) {
  double result_sum = total_distance(result);
  for (std::size_t j = result.hits.size(); j < farthest.hits.size(); ++j) {
    result_sum += farthest.hits[j].distance;
  }
  return nag_ratio(total_distance(farthest), result_sum, total_distance(gt));
}

QuerySet sample_query_set(const Corpus& corpus, std::size_t count,
                          std::vector<WeightVector> weight_sets, std::size_t k,
                          std::uint64_t seed) {
  if (k == 0) throw ParameterError("k must be at least 1");
  if (weight_sets.empty()) throw ParameterError("no weight sets given");
  std::vector<DocId> eligible;
  for (const auto& doc : corpus.documents()) {
    const bool any = std::any_of(doc.fields.begin(), doc.fields.end(),
                                 [](const SparseVector& v) { return !v.empty(); });
    if (any) eligible.push_back(doc.id);
  }
  if (count == 0 || count > eligible.size()) {
    throw ParameterError(fmt::format(
        "query count {} not in [1, {}]", count, eligible.size()));
  }
  Rng rng(seed);
  QuerySet qs;
  for (auto i : rng.sample_without_replacement(eligible.size(), count)) {
    qs.query_docs.push_back(eligible[i]);
  }
  qs.weight_sets = std::move(weight_sets);
  qs.k = k;
  return qs;
}

std::string format_weights(const WeightVector& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '-';
    out += fmt::format("{}", w[i]);
  }
  return out;
}

namespace {

struct Truth {
  SearchResult gt;
  SearchResult farthest;
};

Truth compute_truth(const Corpus& corpus, const WeightedQuery& q, DocId query,
                    std::size_t k) {
  return {exhaustive_search(corpus, q, k, query),
          farthest_set(corpus, q, k, query)};
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

EvalReport run_experiment(const Corpus& corpus,
                          std::span<const EvalIndex> indexes,
                          const QuerySet& query_set,
                          std::span<const std::size_t> budgets,
                          ExperimentOptions options) {
  const std::string fingerprint = corpus_fingerprint(corpus);
  for (const auto& e : indexes) {
    if (e.index == nullptr) throw ParameterError("null index");
    check_fingerprint(*e.index, fingerprint);
  }
  for (auto b : budgets) {
    if (b == 0) throw ParameterError("budgets must be positive");
  }

  const std::size_t nq = query_set.query_docs.size();
  const std::size_t nw = query_set.weight_sets.size();
  const std::size_t k = query_set.k;

  auto make_query = [&](std::size_t qi, std::size_t wi) {
    return WeightedQuery{corpus.document(query_set.query_docs[qi]).fields,
                         query_set.weight_sets[wi]};
  };

  std::vector<Truth> cache;
  if (options.cache_ground_truth) {
    cache.resize(nq * nw);
    parallel_for(nq * nw, [&](std::size_t i) {
      const std::size_t qi = i / nw;
      const std::size_t wi = i % nw;
      cache[i] = compute_truth(corpus, make_query(qi, wi),
                               query_set.query_docs[qi], k);
    });
  }

  EvalReport report;
  report.k = k;
  report.query_count = nq;
  for (std::size_t x = 0; x < indexes.size(); ++x) {
    const auto& index = *indexes[x].index;
    report.indexes.push_back({std::string(to_string(index.scheme)),
                              index.params, index.total_clusters(),
                              serialize_index(index).size(),
                              indexes[x].preprocessing_time_s});
    for (std::size_t wi = 0; wi < nw; ++wi) {
      for (auto budget : budgets) {
        EvalRow row;
        row.scheme = std::string(to_string(index.scheme));
        row.weights = format_weights(query_set.weight_sets[wi]);
        row.budget = budget;
        for (std::size_t qi = 0; qi < nq; ++qi) {
          const DocId query_doc = query_set.query_docs[qi];
          const WeightedQuery q = make_query(qi, wi);
          const auto result =
              pruned_search(index, corpus, q, {budget, k}, query_doc);
          const Truth truth = options.cache_ground_truth
                                  ? cache[qi * nw + wi]
                                  : compute_truth(corpus, q, query_doc, k);
          QueryRecord rec;
          rec.index_pos = x;
          rec.weight_set = wi;
          rec.budget = budget;
          rec.query = query_doc;
          rec.recall = competitive_recall(result, truth.gt);
          rec.nag = normalized_aggregate_goodness(result, truth.gt,
                                                  truth.farthest);
          rec.time_s = result.stats.wall_time_s;
          rec.candidates = result.stats.candidates_scanned;
          row.mean_recall += static_cast<double>(rec.recall);
          row.mean_nag += rec.nag;
          row.mean_query_time_s += rec.time_s;
          row.candidates_mean += static_cast<double>(rec.candidates);
          report.records.push_back(rec);
        }
        const double denom = static_cast<double>(std::max<std::size_t>(nq, 1));
        row.mean_recall /= denom;
        row.mean_nag /= denom;
        row.mean_query_time_s /= denom;
        row.candidates_mean /= denom;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "scheme,weights,budget,mean_recall,mean_nag,mean_query_time_s,"
         "candidates_mean\n";
  for (const auto& r : report.rows) {
    out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.3f}\n", r.scheme,
                       r.weights, r.budget, r.mean_recall, r.mean_nag,
                       r.mean_query_time_s, r.candidates_mean);
  }
}

void write_report_summary_json(std::ostream& out, const EvalReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["queries"] = report.query_count;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : report.indexes) {
    nlohmann::ordered_json e;
    e["scheme"] = s.scheme;
    e["k_clusters"] = s.params.k_clusters;
    e["clusterings"] = s.params.clusterings;
    e["theta"] = s.params.theta;
    e["seed"] = s.params.seed;
    e["total_clusters"] = s.total_clusters;
    e["index_bytes"] = s.index_bytes;
    e["preprocessing_time_s"] = s.preprocessing_time_s;
    arr.push_back(std::move(e));
  }
  j["indexes"] = std::move(arr);
  out << j.dump(2) << '\n';
}

}  // namespace fieldann
