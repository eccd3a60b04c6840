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
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace fieldann {

using TermId = std::uint32_t;
using DocId = std::int64_t;

inline constexpr double kTolerance = 1e-9;

/// Sparse term-id -> weight vector over one field's vocabulary.
///
/// Entries are kept sorted by term id with no duplicates and no exact zeros,
/// so dot products are a linear merge.
class SparseVector {
 public:
  struct Entry {
    TermId term;
    double weight;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;
  SparseVector(std::initializer_list<std::pair<TermId, double>> entries);

  // Accepts entries in any order; duplicate terms are summed, zeros dropped.
  // Throws ParameterError on non-finite weights.
  static SparseVector from_unsorted(std::vector<Entry> entries);
  // Trusts the caller: strictly increasing terms, all weights finite and
  // non-zero.
  static SparseVector from_sorted(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Weight of `term`, 0 when absent.
  double at(TermId term) const;
  double norm() const;
  double squared_norm() const;

  SparseVector scaled(double factor) const;
  // Zero vector stays empty.
  SparseVector normalized() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

struct DocumentVectors {
  DocId id = 0;
  std::vector<SparseVector> fields;
};

/// Positive per-field weights summing to one.
class WeightVector {
 public:
  // Throws ParameterError unless every weight is > 0 and the sum is within
  // kTolerance of 1.
  explicit WeightVector(std::vector<double> weights);

  // Accepts weights whose sum is within `tolerance` of 1 and rescales them
  // to sum exactly to 1.
  static WeightVector renormalized(std::vector<double> weights,
                                   double tolerance);
  // Equal weights 1/s.
  static WeightVector uniform(std::size_t field_count);

  std::span<const double> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
};

struct WeightedQuery {
  std::vector<SparseVector> fields;
  WeightVector weights;
};

/// Weighted query blocks w_i * q_i scaled to unit concatenated norm.
struct NormalizedQuery {
  std::vector<SparseVector> blocks;
  double norm_factor = 0.0;  // |Q_w|
};

double dot(const SparseVector& a, const SparseVector& b);

// 1 - a.b; meaningful for vectors of norm 0 or 1.
double cosine_distance(const SparseVector& a, const SparseVector& b);

// 1 - sum_i w_i (q_i . e_i). Throws DimensionError on field-count mismatch.
double aggregate_distance(const WeightedQuery& q, const DocumentVectors& e);

// Throws DegenerateQueryError when every field is empty.
NormalizedQuery normalize_weighted_query(const WeightedQuery& q);

// 1 - sum_i block_i . e_i. Rank-equivalent to aggregate_distance; can be
// negative since a concatenated document has norm sqrt(s).
double nwd(const NormalizedQuery& nq, const DocumentVectors& e);

// Similarity between normalized query blocks and a block-structured leader.
double block_similarity(std::span<const SparseVector> blocks,
                        std::span<const SparseVector> leader);

}  // namespace fieldann
