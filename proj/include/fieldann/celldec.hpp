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

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fieldann/index.hpp"
#include "fieldann/ingest.hpp"
#include "fieldann/vecspace.hpp"

namespace fieldann {

inline constexpr double kDefaultTheta = 0.5;
inline constexpr std::size_t kCellDecFields = 3;

enum class RegionId { kT1 = 0, kT2 = 1, kT3 = 2, kT4 = 3 };

/// One of the four regions of the 3-field weight simplex: three corner
/// triangles and the central one.
struct Region {
  RegionId id = RegionId::kT4;
  std::array<double, 3> multipliers{1.0, 1.0, 1.0};

  std::size_t index() const { return static_cast<std::size_t>(id); }
  friend bool operator==(const Region&, const Region&) = default;
};

Region make_region(RegionId id, double theta = kDefaultTheta);

// T_i when w_i >= 0.5 (lowest i on a tie), T4 otherwise.
// Throws UnsupportedError unless w has exactly three fields.
Region region_of(const WeightVector& w, double theta = kDefaultTheta);

// Field i's term ids are shifted by the sizes of fields 0..i-1, giving a
// single composite id space.
std::vector<TermId> composite_offsets(const Corpus& corpus);

// normalize(sum_i multiplier_i * V_i) in the composite id space; all-empty
// input gives an empty vector. Throws UnsupportedError for s != 3.
SparseVector composite_vector(std::span<const SparseVector> fields,
                              const Region& region,
                              std::span<const TermId> offsets);

enum class GroundMethod { kKMeans, kRandom };

// One clustering per region over that region's composite vectors. The
// result is a MultiIndex with scheme kCellDec (k-means) or kPods07 (random
// leaders); region r's clustering is seeded with seed + r.
MultiIndex build_celldec_index(const Corpus& corpus, std::size_t k_clusters,
                               double theta, GroundMethod ground,
                               std::uint64_t seed);

// Region of the query's weights and the query composite for that region.
// Throws DegenerateQueryError when every query field is empty.
std::pair<Region, SparseVector> celldec_query_vector(
    const WeightedQuery& q, double theta, std::span<const TermId> offsets);

}  // namespace fieldann
