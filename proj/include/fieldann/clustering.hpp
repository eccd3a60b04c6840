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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fieldann/ingest.hpp"
#include "fieldann/vecspace.hpp"

namespace fieldann {

enum class ClusterMethod { kFpf, kKMeans, kRandom };

std::string_view to_string(ClusterMethod method);
ClusterMethod cluster_method_from_string(std::string_view name);

struct Cluster {
  // One block per field for multi-field clusterings, a single block for
  // clusterings over composite vectors.
  std::vector<SparseVector> leader;
  // Set when the leader is a corpus document (medoid).
  std::optional<DocId> leader_doc;
  std::vector<DocId> members;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Clustering {
  ClusterMethod method = ClusterMethod::kFpf;
  std::uint64_t seed = 0;
  std::vector<Cluster> clusters;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

struct LabeledVector {
  DocId id = 0;
  SparseVector vector;
};

// Equal-weight aggregate distance 1 - (1/s) sum_i a_i . b_i.
double clustering_distance(const DocumentVectors& a, const DocumentVectors& b);

/// Result of furthest-point-first over points 0..n-1.
struct FpfCenters {
  std::vector<std::size_t> centers;     // in selection order
  std::vector<std::size_t> assignment;  // point -> position in `centers`
  std::vector<double> distance;         // point -> distance to its center

  double radius() const;
};

// Gonzalez's furthest-point-first. The first center is point 0; every later
// center is the point farthest from its nearest chosen center. Ties go to
// the lowest point index, both for the next center and for assignment, so
// callers order points by doc_id. Centers are always distinct points and
// each center is assigned to itself.
FpfCenters furthest_point_first(
    std::size_t n, std::size_t k,
    const std::function<double(std::size_t, std::size_t)>& distance);

struct FpfOptions {
  // false: run FPF on the whole corpus instead of a ceil(sqrt(K n)) sample.
  bool sample = true;
};

// FPF on a seeded sample, then the remaining documents are streamed into the
// cluster of the nearest current medoid, updating that medoid exactly after
// every insertion. Leaders are the final medoids.
// Throws ParameterError unless 1 <= K <= n.
Clustering fpf_cluster(const Corpus& corpus, std::size_t k_clusters,
                       std::uint64_t seed, FpfOptions options = {});

// Spherical k-means with seeded initial centroids drawn from the input.
// Stops after 20 iterations or when no assignment changes. When
// `objective_history` is given it receives the mean cosine distance to the
// assigned centroid after each centroid update.
Clustering kmeans_cluster(std::span<const LabeledVector> vectors,
                          std::size_t k_clusters, std::uint64_t seed,
                          std::vector<double>* objective_history = nullptr);

// K random representatives; every vector joins its nearest representative
// and each group is led by its normalized centroid.
Clustering random_cluster(std::span<const LabeledVector> vectors,
                          std::size_t k_clusters, std::uint64_t seed);

inline constexpr int kKMeansMaxIterations = 20;

// Normalized sum of the given vectors.
SparseVector normalized_centroid(std::span<const SparseVector* const> members);

}  // namespace fieldann
