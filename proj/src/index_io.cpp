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

#include <istream>
#include <ostream>
#include <sstream>

#include "fieldann/errors.hpp"
#include "fieldann/index.hpp"
#include "json.hpp"

namespace fieldann {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kIndexMagic = "VSAI1";

ordered_json sparse_to_json(const SparseVector& v) {
  auto arr = ordered_json::array();
  for (const auto& e : v.entries()) arr.push_back({e.term, e.weight});
  return arr;
}

SparseVector sparse_from_json(const ordered_json& arr) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(arr.size());
  for (const auto& pair : arr) {
    const SparseVector::Entry e{pair.at(0).get<TermId>(),
                                pair.at(1).get<double>()};
    if (!entries.empty() && entries.back().term >= e.term) {
      throw FormatError("leader entries are not strictly increasing");
    }
    entries.push_back(e);
  }
  return SparseVector::from_sorted(std::move(entries));
}

}  // namespace

void save_index(std::ostream& out, const MultiIndex& index) {
  ordered_json header;
  header["magic"] = kIndexMagic;
  header["scheme"] = to_string(index.scheme);
  header["k_clusters"] = index.params.k_clusters;
  header["clusterings"] = index.params.clusterings;
  header["theta"] = index.params.theta;
  header["seed"] = index.params.seed;
  header["field_count"] = index.field_count;
  header["fingerprint"] = index.corpus_fingerprint;
  auto seeds = ordered_json::array();
  for (const auto& c : index.clusterings) seeds.push_back(c.seed);
  header["seeds"] = std::move(seeds);
  out << header.dump() << '\n';

  for (std::size_t i = 0; i < index.clusterings.size(); ++i) {
    const auto& clustering = index.clusterings[i];
    ordered_json line;
    line["clustering"] = i;
    line["method"] = to_string(clustering.method);
    line["seed"] = clustering.seed;
    line["clusters"] = clustering.clusters.size();
    out << line.dump() << '\n';
    for (const auto& cluster : clustering.clusters) {
      ordered_json c;
      c["leader_doc"] = cluster.leader_doc ? ordered_json(*cluster.leader_doc)
                                           : ordered_json(nullptr);
      auto blocks = ordered_json::array();
      for (const auto& b : cluster.leader) blocks.push_back(sparse_to_json(b));
      c["leader"] = std::move(blocks);
      c["members"] = cluster.members;
      out << c.dump() << '\n';
    }
  }
}

std::string serialize_index(const MultiIndex& index) {
  std::ostringstream os;
  save_index(os, index);
  return std::move(os).str();
}

MultiIndex load_index(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto parse_next = [&](std::string_view what) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        return ordered_json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(fmt::format("index line {}: {}", lineno, e.what()));
      }
    }
    throw FormatError(fmt::format("truncated index file: missing {}", what));
  };

  try {
    const auto header = parse_next("header");
    if (header.at("magic").get<std::string>() != kIndexMagic) {
      throw FormatError("not an index file (bad magic)");
    }
    MultiIndex index;
    index.scheme = scheme_from_string(header.at("scheme").get<std::string>());
    index.params.k_clusters = header.at("k_clusters").get<std::size_t>();
    index.params.clusterings = header.at("clusterings").get<std::size_t>();
    index.params.theta = header.at("theta").get<double>();
    index.params.seed = header.at("seed").get<std::uint64_t>();
    index.field_count = header.at("field_count").get<std::size_t>();
    index.corpus_fingerprint = header.at("fingerprint").get<std::string>();
    const auto count = header.at("seeds").size();

    for (std::size_t i = 0; i < count; ++i) {
      const auto meta = parse_next("clustering");
      if (meta.at("clustering").get<std::size_t>() != i) {
        throw FormatError(
            fmt::format("index line {}: expected clustering {}", lineno, i));
      }
      Clustering clustering;
      clustering.method =
          cluster_method_from_string(meta.at("method").get<std::string>());
      clustering.seed = meta.at("seed").get<std::uint64_t>();
      const auto k = meta.at("clusters").get<std::size_t>();
      for (std::size_t c = 0; c < k; ++c) {
        const auto obj = parse_next("cluster");
        Cluster cluster;
        if (!obj.at("leader_doc").is_null()) {
          cluster.leader_doc = obj.at("leader_doc").get<DocId>();
        }
        for (const auto& b : obj.at("leader")) {
          cluster.leader.push_back(sparse_from_json(b));
        }
        cluster.members = obj.at("members").get<std::vector<DocId>>();
        if (cluster.members.empty()) {
          throw FormatError(fmt::format("index line {}: empty cluster", lineno));
        }
        clustering.clusters.push_back(std::move(cluster));
      }
      index.clusterings.push_back(std::move(clustering));
    }
    return index;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("index line {}: {}", lineno, e.what()));
  } catch (const ParameterError& e) {
    throw FormatError(fmt::format("index line {}: {}", lineno, e.what()));
  }
}

}  // namespace fieldann
