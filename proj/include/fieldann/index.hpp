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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fieldann/clustering.hpp"
#include "fieldann/ingest.hpp"

namespace fieldann {

enum class Scheme { kOurs, kCellDec, kPods07 };

std::string_view to_string(Scheme scheme);
// Accepts "ours", "celldec", "pods07". Throws ParameterError otherwise.
Scheme scheme_from_string(std::string_view name);

struct IndexParams {
  std::size_t k_clusters = 0;
  std::size_t clusterings = 0;  // t for kOurs, 4 regions for CellDec/PODS07
  double theta = 0.0;           // CellDec squeeze factor, 0 for kOurs
  std::uint64_t seed = 0;

  friend bool operator==(const IndexParams&, const IndexParams&) = default;
};

/// Bundle of clusterings searched together. For kOurs these are t
/// independent FPF clusterings over block-structured documents; for kCellDec
/// and kPods07 they are the four simplex-region clusterings (T1..T4) over
/// composite vectors.
struct MultiIndex {
  Scheme scheme = Scheme::kOurs;
  IndexParams params;
  std::size_t field_count = 0;
  std::string corpus_fingerprint;
  std::vector<Clustering> clusterings;

  std::size_t total_clusters() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// t FPF clusterings with seeds seed, seed+1, ...; built on separate threads,
// each with its own seed, so the result does not depend on scheduling.
MultiIndex build_multi_index(const Corpus& corpus, std::size_t k_clusters,
                             std::size_t t, std::uint64_t seed);

// Throws FingerprintMismatch when `index` was built on another corpus.
void check_fingerprint(const MultiIndex& index, const Corpus& corpus);
void check_fingerprint(const MultiIndex& index, std::string_view fingerprint);

// "VSAI1" JSON-lines container: a header with scheme and parameters, then
// one line per clustering and one line per cluster.
void save_index(std::ostream& out, const MultiIndex& index);
MultiIndex load_index(std::istream& in);
std::string serialize_index(const MultiIndex& index);

}  // namespace fieldann
