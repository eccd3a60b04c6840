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

#include "fieldann/celldec.hpp"

#include <fmt/core.h>

#include <exception>
#include <thread>

#include "fieldann/clustering.hpp"
#include "fieldann/errors.hpp"

namespace fieldann {

namespace {

void check_three_fields(std::size_t s) {
  if (s != kCellDecFields) {
    throw UnsupportedError(fmt::format(
        "weight-simplex regions are defined for 3 fields, got {}", s));
  }
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ParameterError(fmt::format("theta must be in (0, 1], got {}", theta));
  }
}

}  // namespace

Region make_region(RegionId id, double theta) {
  check_theta(theta);
  Region r;
  r.id = id;
  if (id == RegionId::kT4) {
    r.multipliers = {1.0, 1.0, 1.0};
  } else {
    r.multipliers = {theta, theta, theta};
    r.multipliers[static_cast<std::size_t>(id)] = 1.0;
  }
  return r;
}

Region region_of(const WeightVector& w, double theta) {
  check_three_fields(w.size());
  for (std::size_t i = 0; i < kCellDecFields; ++i) {
    if (w[i] >= 0.5) return make_region(static_cast<RegionId>(i), theta);
  }
  return make_region(RegionId::kT4, theta);
}

std::vector<TermId> composite_offsets(const Corpus& corpus) {
  std::vector<TermId> offsets;
  TermId next = 0;
  for (const auto& v : corpus.vocabularies()) {
    offsets.push_back(next);
    next += static_cast<TermId>(v.size());
  }
  return offsets;
}

SparseVector composite_vector(std::span<const SparseVector> fields,
                              const Region& region,
                              std::span<const TermId> offsets) {
  check_three_fields(fields.size());
  check_three_fields(offsets.size());
  std::size_t total = 0;
  for (const auto& f : fields) total += f.size();
  std::vector<SparseVector::Entry> entries;
  entries.reserve(total);
  // offsets are increasing, so appending field by field stays sorted
  for (std::size_t i = 0; i < kCellDecFields; ++i) {
    const double m = region.multipliers[i];
    for (const auto& e : fields[i].entries()) {
      entries.push_back({e.term + offsets[i], m * e.weight});
    }
  }
  return SparseVector::from_sorted(std::move(entries)).normalized();
}

MultiIndex build_celldec_index(const Corpus& corpus, std::size_t k_clusters,
                               double theta, GroundMethod ground,
                               std::uint64_t seed) {
  check_three_fields(corpus.field_count());
  check_theta(theta);
  if (k_clusters == 0 || k_clusters > corpus.size()) {
    throw ParameterError(fmt::format("need 1 <= K <= n, got K={} n={}",
                                     k_clusters, corpus.size()));
  }

  MultiIndex index;
  index.scheme = ground == GroundMethod::kKMeans ? Scheme::kCellDec
                                                 : Scheme::kPods07;
  index.params = {k_clusters, 4, theta, seed};
  index.field_count = corpus.field_count();
  index.corpus_fingerprint = corpus_fingerprint(corpus);
  index.clusterings.resize(4);

  const auto offsets = composite_offsets(corpus);
  std::vector<std::exception_ptr> errors(4);
  std::vector<std::thread> workers;
  for (std::size_t r = 0; r < 4; ++r) {
    workers.emplace_back([&, r] {
      try {
        const Region region = make_region(static_cast<RegionId>(r), theta);
        std::vector<LabeledVector> composites;
        composites.reserve(corpus.size());
        for (const auto& doc : corpus.documents()) {
          composites.push_back(
              {doc.id, composite_vector(doc.fields, region, offsets)});
        }
        index.clusterings[r] =
            ground == GroundMethod::kKMeans
                ? kmeans_cluster(composites, k_clusters, seed + r)
                : random_cluster(composites, k_clusters, seed + r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return index;
}

std::pair<Region, SparseVector> celldec_query_vector(
    const WeightedQuery& q, double theta, std::span<const TermId> offsets) {
  const Region region = region_of(q.weights, theta);
  SparseVector composite = composite_vector(q.fields, region, offsets);
  if (composite.empty()) {
    throw DegenerateQueryError("every query field is empty");
  }
  return {region, std::move(composite)};
}

}  // namespace fieldann
