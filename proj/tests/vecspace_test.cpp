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

#include "fieldann/vecspace.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fieldann/errors.hpp"
#include "fieldann/random.hpp"
#include "support/oracles.hpp"

namespace fieldann {
namespace {

TEST(SparseVectorTest, FromUnsortedSortsMergesAndDropsZeros) {
  auto v = SparseVector::from_unsorted({{7, 1.0}, {2, 0.5}, {7, 2.0}, {4, 0.0}});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.entries()[0].term, 2u);
  EXPECT_DOUBLE_EQ(v.at(7), 3.0);
  EXPECT_DOUBLE_EQ(v.at(4), 0.0);
}

TEST(SparseVectorTest, RejectsNonFiniteWeights) {
  EXPECT_THROW(
      SparseVector::from_unsorted({{1, std::numeric_limits<double>::quiet_NaN()}}),
      ParameterError);
  EXPECT_THROW(
      SparseVector::from_unsorted({{1, std::numeric_limits<double>::infinity()}}),
      ParameterError);
}

TEST(SparseVectorTest, NormalizedHasUnitNormAndEmptyStaysEmpty) {
  SparseVector v{{1, 3.0}, {5, 4.0}};
  EXPECT_DOUBLE_EQ(v.norm(), 5.0);
  EXPECT_NEAR(v.normalized().norm(), 1.0, 1e-15);
  EXPECT_TRUE(SparseVector{}.normalized().empty());
}

TEST(DotTest, DisjointSupportIsZero) {
  SparseVector a{{1, 1.0}, {3, 1.0}};
  SparseVector b{{2, 1.0}, {4, 1.0}};
  EXPECT_EQ(dot(a, b), 0.0);
  EXPECT_EQ(dot(a, SparseVector{}), 0.0);
}

TEST(DotTest, MatchesMapOracleIncludingSkewedSizes) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t na = 1 + rng.uniform_index(trial % 2 ? 4 : 400);
    const std::size_t nb = 1 + rng.uniform_index(400);
    auto a = oracle::random_unit_vector(rng, 1000, na);
    auto b = oracle::random_unit_vector(rng, 1000, nb);
    EXPECT_NEAR(dot(a, b), oracle::dot(a, b), 1e-12);
    EXPECT_NEAR(dot(b, a), oracle::dot(a, b), 1e-12);
  }
}

TEST(CosineDistanceTest, IdenticalAndOrthogonal) {
  auto a = SparseVector{{1, 1.0}, {2, 1.0}}.normalized();
  EXPECT_NEAR(cosine_distance(a, a), 0.0, kTolerance);
  EXPECT_NEAR(cosine_distance(a, SparseVector{{3, 1.0}}), 1.0, kTolerance);
}

TEST(WeightVectorTest, Validation) {
  EXPECT_NO_THROW(WeightVector({0.5, 0.5}));
  EXPECT_THROW(WeightVector({0.5, 0.6}), ParameterError);
  EXPECT_THROW(WeightVector({1.0, 0.0}), ParameterError);
  EXPECT_THROW(WeightVector({1.2, -0.2}), ParameterError);
  EXPECT_THROW(WeightVector(std::vector<double>{}), ParameterError);
  const auto w = WeightVector::renormalized({0.4, 0.4, 0.2 + 5e-7}, 1e-6);
  EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-15);
  EXPECT_THROW(WeightVector::renormalized({0.5, 0.6, 0.2}, 1e-6), ParameterError);
  EXPECT_DOUBLE_EQ(WeightVector::uniform(4)[2], 0.25);
}

TEST(AggregateDistanceTest, SmallExample) {
  // q = e in field 0, orthogonal in field 1: d = 1 - 0.7 * 1 - 0.3 * 0.
  DocumentVectors e{1, {SparseVector{{1, 1.0}}, SparseVector{{2, 1.0}}}};
  WeightedQuery q{{SparseVector{{1, 1.0}}, SparseVector{{3, 1.0}}},
                  WeightVector({0.7, 0.3})};
  EXPECT_NEAR(aggregate_distance(q, e), 0.3, kTolerance);
}

TEST(AggregateDistanceTest, FieldCountMismatchThrows) {
  DocumentVectors e{1, {SparseVector{{1, 1.0}}}};
  WeightedQuery q{{SparseVector{{1, 1.0}}, SparseVector{}}, WeightVector({0.5, 0.5})};
  EXPECT_THROW(aggregate_distance(q, e), DimensionError);
}

TEST(NormalizedQueryTest, NormFactorAndUnitConcatenation) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    WeightedQuery q{{oracle::random_unit_vector(rng, 50, 5),
                     oracle::random_unit_vector(rng, 50, 3),
                     oracle::random_unit_vector(rng, 50, 9)},
                    oracle::random_weights(rng, 3)};
    const auto nq = normalize_weighted_query(q);
    double expect = 0.0;
    for (std::size_t i = 0; i < 3; ++i) expect += q.weights[i] * q.weights[i];
    EXPECT_NEAR(nq.norm_factor, std::sqrt(expect), 1e-12);
    double sq = 0.0;
    for (const auto& b : nq.blocks) sq += b.squared_norm();
    EXPECT_NEAR(sq, 1.0, 1e-12);
  }
}

TEST(NormalizedQueryTest, AllEmptyQueryIsDegenerate) {
  WeightedQuery q{{SparseVector{}, SparseVector{}}, WeightVector({0.5, 0.5})};
  EXPECT_THROW(normalize_weighted_query(q), DegenerateQueryError);
}

TEST(NwdTest, IsAffineInAggregateDistance) {
  // nwd = 1 - (1 - d_AD) / |Q_w|, so both orderings agree.
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedQuery q{{oracle::random_unit_vector(rng, 30, 6),
                     oracle::random_unit_vector(rng, 30, 2),
                     oracle::random_unit_vector(rng, 30, 10)},
                    oracle::random_weights(rng, 3)};
    DocumentVectors e{0, {oracle::random_unit_vector(rng, 30, 6),
                          oracle::random_unit_vector(rng, 30, 4),
                          oracle::random_unit_vector(rng, 30, 8)}};
    const auto nq = normalize_weighted_query(q);
    const double d = aggregate_distance(q, e);
    EXPECT_NEAR(nwd(nq, e), 1.0 - (1.0 - d) / nq.norm_factor, 1e-12);
    EXPECT_NEAR(block_similarity(nq.blocks, e.fields), 1.0 - nwd(nq, e), 1e-12);
  }
}

TEST(MetricPropertyTest, SquaredEuclideanIsTwiceCosineDistance) {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    auto x = oracle::random_unit_vector(rng, 40, 1 + rng.uniform_index(10));
    auto y = oracle::random_unit_vector(rng, 40, 1 + rng.uniform_index(10));
    const double sq = x.squared_norm() + y.squared_norm() - 2.0 * oracle::dot(x, y);
    EXPECT_NEAR(sq, 2.0 * cosine_distance(x, y), 1e-9);
  }
}

}  // namespace
}  // namespace fieldann
