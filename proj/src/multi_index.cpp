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

#include <exception>
#include <thread>

#include "fieldann/errors.hpp"
#include "fieldann/index.hpp"

namespace fieldann {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kOurs:
      return "ours";
    case Scheme::kCellDec:
      return "celldec";
    case Scheme::kPods07:
      return "pods07";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "ours") return Scheme::kOurs;
  if (name == "celldec") return Scheme::kCellDec;
  if (name == "pods07") return Scheme::kPods07;
  throw ParameterError(fmt::format("unknown scheme '{}'", name));
}

std::size_t MultiIndex::total_clusters() const {
  std::size_t total = 0;
  for (const auto& c : clusterings) total += c.clusters.size();
  return total;
}

MultiIndex build_multi_index(const Corpus& corpus, std::size_t k_clusters,
                             std::size_t t, std::uint64_t seed) {
  if (t == 0) throw ParameterError("need at least one clustering");
  if (k_clusters == 0 || k_clusters > corpus.size()) {
    throw ParameterError(fmt::format("need 1 <= K <= n, got K={} n={}",
                                     k_clusters, corpus.size()));
  }

  MultiIndex index;
  index.scheme = Scheme::kOurs;
  index.params = {k_clusters, t, 0.0, seed};
  index.field_count = corpus.field_count();
  index.corpus_fingerprint = corpus_fingerprint(corpus);
  index.clusterings.resize(t);

  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> workers;
  workers.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    workers.emplace_back([&, i] {
      try {
        index.clusterings[i] = fpf_cluster(corpus, k_clusters, seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return index;
}

void check_fingerprint(const MultiIndex& index, std::string_view fingerprint) {
  if (index.corpus_fingerprint != fingerprint) {
    throw FingerprintMismatch(fmt::format(
        "index was built on corpus {}, got corpus {}", index.corpus_fingerprint,
        fingerprint));
  }
}

void check_fingerprint(const MultiIndex& index, const Corpus& corpus) {
  check_fingerprint(index, corpus_fingerprint(corpus));
}

}  // namespace fieldann
