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

#include "fieldann/clustering.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fieldann/errors.hpp"
#include "fieldann/random.hpp"

namespace fieldann {

std::string_view to_string(ClusterMethod method) {
  switch (method) {
    case ClusterMethod::kFpf:
      return "fpf";
    case ClusterMethod::kKMeans:
      return "kmeans";
    case ClusterMethod::kRandom:
      return "random";
  }
  return "unknown";
}

ClusterMethod cluster_method_from_string(std::string_view name) {
  if (name == "fpf") return ClusterMethod::kFpf;
  if (name == "kmeans") return ClusterMethod::kKMeans;
  if (name == "random") return ClusterMethod::kRandom;
  throw FormatError(fmt::format("unknown clustering method '{}'", name));
}

double clustering_distance(const DocumentVectors& a, const DocumentVectors& b) {
  if (a.fields.size() != b.fields.size()) {
    throw DimensionError(fmt::format("field count mismatch: {} vs {}",
                                     a.fields.size(), b.fields.size()));
  }
  double sim = 0.0;
  for (std::size_t i = 0; i < a.fields.size(); ++i) {
    sim += dot(a.fields[i], b.fields[i]);
  }
  return 1.0 - sim / static_cast<double>(a.fields.size());
}

double FpfCenters::radius() const {
  double r = 0.0;
  for (double d : distance) r = std::max(r, d);
  return r;
}

FpfCenters furthest_point_first(
    std::size_t n, std::size_t k,
    const std::function<double(std::size_t, std::size_t)>& distance) {
  if (k == 0 || k > n) {
    throw ParameterError(fmt::format("need 1 <= K <= n, got K={} n={}", k, n));
  }
  FpfCenters out;
  out.assignment.assign(n, 0);
  out.distance.assign(n, std::numeric_limits<double>::infinity());
  std::vector<char> is_center(n, 0);

  std::size_t next = 0;
  for (std::size_t c = 0; c < k; ++c) {
    out.centers.push_back(next);
    is_center[next] = 1;
    out.assignment[next] = c;
    out.distance[next] = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (is_center[p]) continue;
      const double d = distance(p, next);
      if (d < out.distance[p]) {
        out.distance[p] = d;
        out.assignment[p] = c;
      }
    }
    // farthest non-center point; strict > keeps the lowest index on ties
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n; ++p) {
      if (!is_center[p] && out.distance[p] > best) {
        best = out.distance[p];
        next = p;
      }
    }
  }
  return out;
}

namespace {

// Exact medoid of a growing cluster: each member keeps the sum of its
// distances to every other member.
class MedoidCluster {
 public:
  MedoidCluster(const std::vector<DocumentVectors>& docs,
                std::vector<std::size_t> members)
      : docs_(&docs), members_(std::move(members)), sums_(members_.size(), 0.0) {
    for (std::size_t a = 0; a < members_.size(); ++a) {
      for (std::size_t b = a + 1; b < members_.size(); ++b) {
        const double d = distance(members_[a], members_[b]);
        sums_[a] += d;
        sums_[b] += d;
      }
    }
    refresh_medoid();
  }

  void add(std::size_t doc) {
    double own = 0.0;
    for (std::size_t a = 0; a < members_.size(); ++a) {
      const double d = distance(doc, members_[a]);
      sums_[a] += d;
      own += d;
    }
    members_.push_back(doc);
    sums_.push_back(own);
    refresh_medoid();
  }

  std::size_t medoid() const { return members_[medoid_]; }
  const std::vector<std::size_t>& members() const { return members_; }

 private:
  double distance(std::size_t a, std::size_t b) const {
    return clustering_distance((*docs_)[a], (*docs_)[b]);
  }

  void refresh_medoid() {
    std::size_t best = 0;
    for (std::size_t a = 1; a < members_.size(); ++a) {
      const auto& docs = *docs_;
      if (sums_[a] < sums_[best] ||
          (sums_[a] == sums_[best] &&
           docs[members_[a]].id < docs[members_[best]].id)) {
        best = a;
      }
    }
    medoid_ = best;
  }

  const std::vector<DocumentVectors>* docs_;
  std::vector<std::size_t> members_;
  std::vector<double> sums_;
  std::size_t medoid_ = 0;
};

void check_k(std::size_t k, std::size_t n) {
  if (k == 0 || k > n) {
    throw ParameterError(fmt::format("need 1 <= K <= n, got K={} n={}", k, n));
  }
}

std::size_t ceil_sqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return r;
}

std::vector<DocId> sorted_ids(const std::vector<DocumentVectors>& docs,
                              const std::vector<std::size_t>& members) {
  std::vector<DocId> ids;
  ids.reserve(members.size());
  for (auto m : members) ids.push_back(docs[m].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Clustering fpf_cluster(const Corpus& corpus, std::size_t k_clusters,
                       std::uint64_t seed, FpfOptions options) {
  const std::size_t n = corpus.size();
  check_k(k_clusters, n);
  const auto& docs = corpus.documents();

  std::size_t m = n;
  if (options.sample) {
    m = std::clamp(ceil_sqrt(k_clusters * n), k_clusters, n);
  }
  Rng rng(seed);
  std::vector<std::size_t> sample = rng.sample_without_replacement(n, m);
  std::sort(sample.begin(), sample.end(), [&](std::size_t a, std::size_t b) {
    return docs[a].id < docs[b].id;
  });

  const FpfCenters fpf = furthest_point_first(
      m, k_clusters, [&](std::size_t a, std::size_t b) {
        return clustering_distance(docs[sample[a]], docs[sample[b]]);
      });

  std::vector<std::vector<std::size_t>> groups(k_clusters);
  for (std::size_t p = 0; p < m; ++p) {
    groups[fpf.assignment[p]].push_back(sample[p]);
  }
  std::vector<MedoidCluster> clusters;
  clusters.reserve(k_clusters);
  for (auto& g : groups) clusters.emplace_back(docs, std::move(g));

  std::vector<char> sampled(n, 0);
  for (auto p : sample) sampled[p] = 1;
  for (std::size_t p = 0; p < n; ++p) {
    if (sampled[p]) continue;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const std::size_t med = clusters[c].medoid();
      const double d = clustering_distance(docs[p], docs[med]);
      if (d < best_d ||
          (d == best_d && docs[med].id < docs[clusters[best].medoid()].id)) {
        best_d = d;
        best = c;
      }
    }
    clusters[best].add(p);
  }

  Clustering out;
  out.method = ClusterMethod::kFpf;
  out.seed = seed;
  out.clusters.reserve(k_clusters);
  for (const auto& c : clusters) {
    Cluster cl;
    cl.leader = docs[c.medoid()].fields;
    cl.leader_doc = docs[c.medoid()].id;
    cl.members = sorted_ids(docs, c.members());
    out.clusters.push_back(std::move(cl));
  }
  return out;
}

SparseVector normalized_centroid(std::span<const SparseVector* const> members) {
  std::size_t total = 0;
  for (const auto* v : members) total += v->size();
  std::vector<SparseVector::Entry> entries;
  entries.reserve(total);
  for (const auto* v : members) {
    entries.insert(entries.end(), v->entries().begin(), v->entries().end());
  }
  return SparseVector::from_unsorted(std::move(entries)).normalized();
}

Clustering random_cluster(std::span<const LabeledVector> vectors,
                          std::size_t k_clusters, std::uint64_t seed) {
  const std::size_t n = vectors.size();
  check_k(k_clusters, n);

  Rng rng(seed);
  std::vector<std::size_t> reps = rng.sample_without_replacement(n, k_clusters);
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return vectors[a].id < vectors[b].id;
  });

  std::vector<std::ptrdiff_t> rep_slot(n, -1);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    rep_slot[reps[r]] = static_cast<std::ptrdiff_t>(r);
  }

  std::vector<std::vector<std::size_t>> groups(k_clusters);
  for (std::size_t p = 0; p < n; ++p) {
    if (rep_slot[p] >= 0) {
      groups[static_cast<std::size_t>(rep_slot[p])].push_back(p);
      continue;
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const double d = cosine_distance(vectors[p].vector, vectors[reps[r]].vector);
      if (d < best_d) {
        best_d = d;
        best = r;
      }
    }
    groups[best].push_back(p);
  }

  Clustering out;
  out.method = ClusterMethod::kRandom;
  out.seed = seed;
  out.clusters.reserve(k_clusters);
  for (const auto& g : groups) {
    std::vector<const SparseVector*> vs;
    vs.reserve(g.size());
    Cluster cl;
    for (auto p : g) {
      vs.push_back(&vectors[p].vector);
      cl.members.push_back(vectors[p].id);
    }
    std::sort(cl.members.begin(), cl.members.end());
    cl.leader.push_back(normalized_centroid(vs));
    out.clusters.push_back(std::move(cl));
  }
  return out;
}

}  // namespace fieldann
