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

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

#include "fieldann/errors.hpp"

namespace fieldann {

namespace {

// Probe each entry of `small` into `large` by binary search. Used when the
// supports differ a lot in size, e.g. document vs. k-means centroid.
double probe_dot(std::span<const SparseVector::Entry> small,
                 std::span<const SparseVector::Entry> large) {
  double sum = 0.0;
  auto first = large.begin();
  for (const auto& e : small) {
    first = std::lower_bound(
        first, large.end(), e.term,
        [](const SparseVector::Entry& x, TermId t) { return x.term < t; });
    if (first == large.end()) break;
    if (first->term == e.term) sum += e.weight * first->weight;
  }
  return sum;
}

double merge_dot(std::span<const SparseVector::Entry> a,
                 std::span<const SparseVector::Entry> b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].term == b[j].term) {
      sum += a[i].weight * b[j].weight;
      ++i;
      ++j;
    } else if (a[i].term < b[j].term) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

void check_fields(std::size_t lhs, std::size_t rhs) {
  if (lhs != rhs) {
    throw DimensionError(
        fmt::format("field count mismatch: {} vs {}", lhs, rhs));
  }
}

}  // namespace

SparseVector::SparseVector(
    std::initializer_list<std::pair<TermId, double>> entries) {
  std::vector<Entry> raw;
  raw.reserve(entries.size());
  for (const auto& [t, w] : entries) raw.push_back({t, w});
  *this = from_unsorted(std::move(raw));
}

SparseVector SparseVector::from_unsorted(std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (!std::isfinite(e.weight)) {
      throw ParameterError(
          fmt::format("non-finite weight for term {}", e.term));
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.term < b.term; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().term == e.term) {
      out.back().weight += e.weight;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.weight == 0.0; });
  SparseVector v;
  v.entries_ = std::move(out);
  return v;
}

SparseVector SparseVector::from_sorted(std::vector<Entry> entries) {
  SparseVector v;
  v.entries_ = std::move(entries);
  return v;
}

double SparseVector::at(TermId term) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), term,
      [](const Entry& x, TermId t) { return x.term < t; });
  return (it != entries_.end() && it->term == term) ? it->weight : 0.0;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * e.weight;
  return sum;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

SparseVector SparseVector::scaled(double factor) const {
  if (factor == 0.0) return {};
  SparseVector v = *this;
  for (auto& e : v.entries_) e.weight *= factor;
  return v;
}

SparseVector SparseVector::normalized() const {
  const double n = norm();
  if (n == 0.0) return {};
  return scaled(1.0 / n);
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ParameterError("weight vector is empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParameterError(fmt::format("weight {} is not positive", w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ParameterError(fmt::format("weights sum to {}, expected 1", sum));
  }
}

WeightVector WeightVector::renormalized(std::vector<double> weights,
                                        double tolerance) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!std::isfinite(sum) || std::abs(sum - 1.0) > tolerance) {
    throw ParameterError(fmt::format("weights sum to {}, expected 1", sum));
  }
  for (double& w : weights) w /= sum;
  return WeightVector(std::move(weights));
}

WeightVector WeightVector::uniform(std::size_t field_count) {
  if (field_count == 0) throw ParameterError("weight vector is empty");
  return WeightVector(std::vector<double>(
      field_count, 1.0 / static_cast<double>(field_count)));
}

double dot(const SparseVector& a, const SparseVector& b) {
  auto x = a.entries();
  auto y = b.entries();
  if (x.size() > y.size()) std::swap(x, y);
  if (x.empty()) return 0.0;
  if (y.size() > 16 * x.size()) return probe_dot(x, y);
  return merge_dot(x, y);
}

double cosine_distance(const SparseVector& a, const SparseVector& b) {
  return 1.0 - dot(a, b);
}

double aggregate_distance(const WeightedQuery& q, const DocumentVectors& e) {
  check_fields(q.fields.size(), e.fields.size());
  check_fields(q.fields.size(), q.weights.size());
  double sim = 0.0;
  for (std::size_t i = 0; i < q.fields.size(); ++i) {
    sim += q.weights[i] * dot(q.fields[i], e.fields[i]);
  }
  return 1.0 - sim;
}

NormalizedQuery normalize_weighted_query(const WeightedQuery& q) {
  check_fields(q.fields.size(), q.weights.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < q.fields.size(); ++i) {
    sq += q.weights[i] * q.weights[i] * q.fields[i].squared_norm();
  }
  if (!(sq > 0.0)) {
    throw DegenerateQueryError("every query field is empty");
  }
  NormalizedQuery nq;
  nq.norm_factor = std::sqrt(sq);
  nq.blocks.reserve(q.fields.size());
  for (std::size_t i = 0; i < q.fields.size(); ++i) {
    nq.blocks.push_back(q.fields[i].scaled(q.weights[i] / nq.norm_factor));
  }
  return nq;
}

double block_similarity(std::span<const SparseVector> blocks,
                        std::span<const SparseVector> leader) {
  check_fields(blocks.size(), leader.size());
  double sim = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    sim += dot(blocks[i], leader[i]);
  }
  return sim;
}

double nwd(const NormalizedQuery& nq, const DocumentVectors& e) {
  return 1.0 - block_similarity(nq.blocks, e.fields);
}

}  // namespace fieldann
