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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fieldann/celldec.hpp"
#include "fieldann/errors.hpp"
#include "fieldann/synthetic.hpp"
#include "support/oracles.hpp"

namespace fieldann {
namespace {

SearchResult hits(std::vector<Hit> h) {
  SearchResult r;
  r.hits = std::move(h);
  return r;
}

TEST(MetricsTest, CompetitiveRecallCountsDistinctOverlap) {
  const auto gt = hits({{1, 0.1}, {2, 0.2}, {3, 0.3}});
  EXPECT_EQ(competitive_recall(gt, gt), 3u);
  EXPECT_EQ(competitive_recall(hits({{3, 0.3}, {9, 0.4}, {3, 0.3}}), gt), 1u);
  EXPECT_EQ(competitive_recall(hits({}), gt), 0u);
}

TEST(MetricsTest, NagDirectEvaluation) {
  const auto gt = hits({{1, 0.25}, {2, 0.25}});
  const auto a = hits({{1, 0.5}, {3, 0.5}});
  EXPECT_NEAR(normalized_aggregate_goodness(a, gt, 3.0), 0.8, 1e-15);
  EXPECT_EQ(normalized_aggregate_goodness(gt, gt, 0.5), 1.0);  // degenerate
}

TEST(MetricsTest, NagPadsShortResultsWithFarthestDistances) {
  const auto gt = hits({{1, 0.1}, {2, 0.2}});
  const auto ft = hits({{8, 0.9}, {7, 0.8}});
  EXPECT_NEAR(normalized_aggregate_goodness(hits({{1, 0.1}}), gt, ft),
              (1.7 - 0.9) / (1.7 - 0.3), 1e-15);
  EXPECT_EQ(normalized_aggregate_goodness(hits({}), gt, ft), 0.0);
}

TEST(FarthestSetTest, MatchesOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Corpus c = oracle::random_corpus(rng, 10, 3, 8, 3, 0.2);
    WeightedQuery q{oracle::random_corpus(rng, 1, 3, 8, 3).at(0).fields,
                    oracle::random_weights(rng, 3)};
    const auto got = farthest_set(c, q, 4);
    const auto want = oracle::farthest_k(c, q, 4);
    ASSERT_EQ(got.hits.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(got.hits[i].id, want[i].second);
      EXPECT_NEAR(got.hits[i].distance, want[i].first, 1e-12);
    }
  }
}

TEST(FarthestSetTest, OrthogonalDocumentAndLimits) {
  const SparseVector x{{0, 1.0}};
  const SparseVector y{{1, 1.0}};
  std::vector<FieldVocabulary> vocab(1);
  vocab[0].append("a", 1);
  vocab[0].append("b", 1);
  const Corpus c(std::move(vocab), {{0, {x}}, {1, {x}}, {2, {y}}, {3, {x}}});
  WeightedQuery q{{x}, WeightVector({1.0})};
  const auto ft = farthest_set(c, q, 1);
  EXPECT_EQ(ft.hits[0].id, 2);
  EXPECT_DOUBLE_EQ(ft.hits[0].distance, 1.0);
  EXPECT_NEAR(total_distance(farthest_set(c, q, 4)), 1.0, 1e-15);
  EXPECT_THROW(farthest_set(c, q, 4, DocId{0}), ParameterError);
  EXPECT_THROW(farthest_set(c, q, 0), ParameterError);
}

TEST(MetricsTest, IdentitiesOnRandomInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Corpus c = oracle::random_corpus(rng, 40, 3, 10, 4);
    const auto qd = static_cast<DocId>(rng.uniform_index(c.size()));
    WeightedQuery q{c.document(qd).fields, oracle::random_weights(rng, 3)};
    const auto gt = exhaustive_search(c, q, 10, qd);
    const auto ft = farthest_set(c, q, 10, qd);
    EXPECT_EQ(competitive_recall(gt, gt), 10u);
    EXPECT_DOUBLE_EQ(normalized_aggregate_goodness(gt, gt, ft), 1.0);
    EXPECT_DOUBLE_EQ(normalized_aggregate_goodness(ft, gt, ft), 0.0);
  }
}

TEST(QuerySetTest, SeededDistinctAndEligible) {
  Rng rng(2);
  const Corpus c = oracle::random_corpus(rng, 60, 3, 10, 3, 0.6);
  const auto qs = sample_query_set(c, 20, default_weight_sets(), 5, 9);
  EXPECT_EQ(qs.query_docs.size(), 20u);
  EXPECT_EQ(qs.weight_sets.size(), 7u);
  EXPECT_EQ(std::set<DocId>(qs.query_docs.begin(), qs.query_docs.end()).size(), 20u);
  for (auto id : qs.query_docs) {
    bool any = false;
    for (const auto& f : c.document(id).fields) any |= !f.empty();
    EXPECT_TRUE(any);
  }
  EXPECT_EQ(sample_query_set(c, 20, default_weight_sets(), 5, 9).query_docs,
            qs.query_docs);
  EXPECT_THROW(sample_query_set(c, 61, default_weight_sets(), 5, 9), ParameterError);
  EXPECT_THROW(sample_query_set(c, 5, {}, 5, 9), ParameterError);
}

TEST(FormatWeightsTest, DashSeparatedShortest) {
  EXPECT_EQ(format_weights(WeightVector({0.6, 0.2, 0.2})), "0.6-0.2-0.2");
  EXPECT_EQ(format_weights(WeightVector({0.33, 0.33, 0.34})), "0.33-0.33-0.34");
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SyntheticCorpusOptions opt;
    opt.documents = 400;
    opt.seed = 3;
    corpus_ = build_corpus(generate_synthetic_records(opt));
    ours_ = build_multi_index(corpus_, 20, 3, 1);
    cd_ = build_celldec_index(corpus_, 20, 0.5, GroundMethod::kKMeans, 1);
  }

  Corpus corpus_;
  MultiIndex ours_;
  MultiIndex cd_;
};

TEST_F(ExperimentTest, RowOrderAndRecomputedMeans) {
  const auto qs = sample_query_set(
      corpus_, 15, {WeightVector({0.6, 0.2, 0.2}), WeightVector({0.2, 0.2, 0.6})}, 10, 4);
  const std::vector<EvalIndex> idx = {{&ours_, 1.5}, {&cd_, 2.5}};
  const std::vector<std::size_t> budgets = {3, 6, 9};
  const auto rep = run_experiment(corpus_, idx, qs, budgets);
  ASSERT_EQ(rep.rows.size(), 2u * 2u * 3u);
  EXPECT_EQ(rep.rows[0].scheme, "ours");
  EXPECT_EQ(rep.rows[0].weights, "0.6-0.2-0.2");
  EXPECT_EQ(rep.rows[3].weights, "0.2-0.2-0.6");
  EXPECT_EQ(rep.rows[6].scheme, "celldec");
  EXPECT_EQ(rep.rows[2].budget, 9u);
  ASSERT_EQ(rep.records.size(), rep.rows.size() * 15);
  ASSERT_EQ(rep.indexes.size(), 2u);
  EXPECT_EQ(rep.indexes[1].preprocessing_time_s, 2.5);
  EXPECT_EQ(rep.indexes[0].index_bytes, serialize_index(ours_).size());

  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    double recall = 0.0;
    double nag = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
      const auto& rec = rep.records[r * 15 + i];
      EXPECT_EQ(rec.budget, rep.rows[r].budget);
      recall += static_cast<double>(rec.recall);
      nag += rec.nag;
      EXPECT_GE(rec.nag, -1e-12);
      EXPECT_LE(rec.nag, 1.0 + 1e-12);
    }
    EXPECT_NEAR(rep.rows[r].mean_recall, recall / 15, 1e-12);
    EXPECT_NEAR(rep.rows[r].mean_nag, nag / 15, 1e-12);
    if (r % 3) {
      EXPECT_GE(rep.rows[r].mean_recall, rep.rows[r - 1].mean_recall);
    }
  }
}

TEST_F(ExperimentTest, CachingDoesNotChangeResults) {
  const auto qs = sample_query_set(corpus_, 10, default_weight_sets(), 10, 5);
  const std::vector<EvalIndex> idx = {{&ours_, 0.0}, {&cd_, 0.0}};
  const std::vector<std::size_t> budgets = {3, 12};
  const auto cached = run_experiment(corpus_, idx, qs, budgets);
  const auto fresh = run_experiment(corpus_, idx, qs, budgets, {.cache_ground_truth = false});
  ASSERT_EQ(cached.rows.size(), fresh.rows.size());
  for (std::size_t r = 0; r < cached.rows.size(); ++r) {
    EXPECT_EQ(cached.rows[r].mean_recall, fresh.rows[r].mean_recall);
    EXPECT_EQ(cached.rows[r].mean_nag, fresh.rows[r].mean_nag);
    EXPECT_EQ(cached.rows[r].candidates_mean, fresh.rows[r].candidates_mean);
  }
}

TEST_F(ExperimentTest, FullBudgetIsPerfect) {
  const auto qs = sample_query_set(corpus_, 10, default_weight_sets(), 10, 6);
  const std::vector<EvalIndex> idx = {{&ours_, 0.0}, {&cd_, 0.0}};
  const std::vector<std::size_t> budgets = {80};
  for (const auto& row : run_experiment(corpus_, idx, qs, budgets).rows) {
    EXPECT_EQ(row.mean_recall, 10.0);
    EXPECT_DOUBLE_EQ(row.mean_nag, 1.0);
  }
}

TEST_F(ExperimentTest, FingerprintMismatchAndCsvHeader) {
  SyntheticCorpusOptions opt;
  opt.documents = 400;
  opt.seed = 77;
  const Corpus other = build_corpus(generate_synthetic_records(opt));
  const auto qs = sample_query_set(other, 5, default_weight_sets(), 10, 1);
  const std::vector<EvalIndex> idx = {{&ours_, 0.0}};
  const std::vector<std::size_t> budgets = {3};
  EXPECT_THROW(run_experiment(other, idx, qs, budgets), FingerprintMismatch);

  const auto rep = run_experiment(
      corpus_, idx, sample_query_set(corpus_, 5, default_weight_sets(), 10, 1), budgets);
  std::stringstream csv;
  write_report_csv(csv, rep);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header,
            "scheme,weights,budget,mean_recall,mean_nag,mean_query_time_s,"
            "candidates_mean");
  std::string first;
  std::getline(csv, first);
  EXPECT_EQ(first.rfind("ours,0.33-0.33-0.34,3,", 0), 0u) << first;
  std::stringstream json;
  write_report_summary_json(json, rep);
  EXPECT_NE(json.str().find("\"preprocessing_time_s\""), std::string::npos);
}

}  // namespace
}  // namespace fieldann
