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

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fieldann/clustering.hpp"
#include "fieldann/errors.hpp"
#include "fieldann/random.hpp"

namespace fieldann {

namespace {

// K dense centroids over [0, dim). Memory is K * dim doubles.
class DenseCentroids {
 public:
  DenseCentroids(std::size_t k, std::size_t dim)
      : k_(k), dim_(dim), data_(k * dim, 0.0) {}

  double dot(std::size_t c, const SparseVector& v) const {
    const double* row = &data_[c * dim_];
    double sum = 0.0;
    for (const auto& e : v.entries()) sum += e.weight * row[e.term];
    return sum;
  }

  void set(std::size_t c, const SparseVector& v) {
    double* row = &data_[c * dim_];
    std::fill(row, row + dim_, 0.0);
    for (const auto& e : v.entries()) row[e.term] = e.weight;
  }

  void recompute(std::span<const LabeledVector> vectors,
                 const std::vector<std::size_t>& assignment) {
    std::fill(data_.begin(), data_.end(), 0.0);
    for (std::size_t p = 0; p < vectors.size(); ++p) {
      double* row = &data_[assignment[p] * dim_];
      for (const auto& e : vectors[p].vector.entries()) row[e.term] += e.weight;
    }
    for (std::size_t c = 0; c < k_; ++c) {
      double* row = &data_[c * dim_];
      double sq = 0.0;
      for (std::size_t t = 0; t < dim_; ++t) sq += row[t] * row[t];
      if (sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t t = 0; t < dim_; ++t) row[t] *= inv;
      }
    }
  }

  SparseVector to_sparse(std::size_t c) const {
    const double* row = &data_[c * dim_];
    std::vector<SparseVector::Entry> entries;
    for (std::size_t t = 0; t < dim_; ++t) {
      if (row[t] != 0.0) entries.push_back({static_cast<TermId>(t), row[t]});
    }
    return SparseVector::from_sorted(std::move(entries));
  }

 private:
  std::size_t k_;
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace

Clustering kmeans_cluster(std::span<const LabeledVector> vectors,
                          std::size_t k_clusters, std::uint64_t seed,
                          std::vector<double>* objective_history) {
  const std::size_t n = vectors.size();
  if (k_clusters == 0 || k_clusters > n) {
    throw ParameterError(
        fmt::format("need 1 <= K <= n, got K={} n={}", k_clusters, n));
  }
  std::size_t dim = 0;
  for (const auto& v : vectors) {
    if (!v.vector.empty()) {
      dim = std::max<std::size_t>(dim, v.vector.entries().back().term + 1);
    }
  }

  DenseCentroids centroids(k_clusters, dim);
  Rng rng(seed);
  const auto init = rng.sample_without_replacement(n, k_clusters);
  for (std::size_t c = 0; c < k_clusters; ++c) {
    centroids.set(c, vectors[init[c]].vector);
  }

  constexpr auto kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> assignment(n, kUnassigned);
  std::vector<double> distance(n, 0.0);
  if (objective_history) objective_history->clear();

  for (int iter = 0; iter < kKMeansMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t best = 0;
      double best_sim = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k_clusters; ++c) {
        const double sim = centroids.dot(c, vectors[p].vector);
        if (sim > best_sim) {
          best_sim = sim;
          best = c;
        }
      }
      if (assignment[p] != best) changed = true;
      assignment[p] = best;
      distance[p] = 1.0 - best_sim;
    }
    if (!changed) break;

    // reseed empty clusters with the point farthest from its centroid
    std::vector<std::size_t> sizes(k_clusters, 0);
    for (auto a : assignment) ++sizes[a];
    for (std::size_t c = 0; c < k_clusters; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = kUnassigned;
      for (std::size_t p = 0; p < n; ++p) {
        if (sizes[assignment[p]] < 2) continue;
        if (far == kUnassigned || distance[p] > distance[far] ||
            (distance[p] == distance[far] && vectors[p].id < vectors[far].id)) {
          far = p;
        }
      }
      --sizes[assignment[far]];
      assignment[far] = c;
      sizes[c] = 1;
      distance[far] = 0.0;
    }

    centroids.recompute(vectors, assignment);
    if (objective_history) {
      double total = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        total += 1.0 - centroids.dot(assignment[p], vectors[p].vector);
      }
      objective_history->push_back(total / static_cast<double>(n));
    }
  }

  Clustering out;
  out.method = ClusterMethod::kKMeans;
  out.seed = seed;
  out.clusters.resize(k_clusters);
  for (std::size_t p = 0; p < n; ++p) {
    out.clusters[assignment[p]].members.push_back(vectors[p].id);
  }
  for (std::size_t c = 0; c < k_clusters; ++c) {
    std::sort(out.clusters[c].members.begin(), out.clusters[c].members.end());
    out.clusters[c].leader.push_back(centroids.to_sparse(c));
  }
  return out;
}

}  // namespace fieldann
