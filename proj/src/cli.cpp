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

#include "fieldann/cli.hpp"

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fieldann/celldec.hpp"
#include "fieldann/errors.hpp"
#include "fieldann/eval.hpp"
#include "fieldann/index.hpp"
#include "fieldann/ingest.hpp"
#include "fieldann/search.hpp"
#include "fieldann/synthetic.hpp"
#include "json.hpp"

namespace fieldann {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path));
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path));
  return out;
}

Corpus read_corpus_file(const std::string& path) {
  auto in = open_in(path);
  return load_corpus(in);
}

MultiIndex read_index_file(const std::string& path) {
  auto in = open_in(path);
  return load_index(in);
}

std::string meta_path(const std::string& index_path) {
  return index_path + ".meta.json";
}

// Build time lives next to the index so the index itself stays
// reproducible byte for byte.
double read_build_time(const std::string& index_path) {
  std::ifstream in(meta_path(index_path));
  if (!in) return 0.0;
  try {
    const auto j = nlohmann::json::parse(in);
    return j.at("preprocessing_time_s").get<double>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(fmt::format("malformed '{}'", meta_path(index_path)));
  }
}

using Clock = std::chrono::steady_clock;

struct GenArgs {
  std::string out;
  SyntheticCorpusOptions options;
};

struct IngestArgs {
  std::string in;
  std::string out;
};

struct BuildArgs {
  std::string corpus;
  std::string scheme = "ours";
  std::size_t k_clusters = 0;  // 0 -> ceil(sqrt(n))
  std::size_t clusterings = 3;
  double theta = kDefaultTheta;
  std::uint64_t seed = 1;
  std::string out;
};

struct QueryArgs {
  std::string index;
  std::string corpus;
  DocId doc = 0;
  std::string weights;
  std::size_t k = kDefaultK;
  std::size_t budget = 0;  // 0 -> every cluster
  bool exact = false;
};

struct EvalArgs {
  std::vector<std::string> indexes;
  std::string corpus;
  std::uint64_t seed = 1;
  std::size_t k = kDefaultK;
  std::string budgets = "3,6,9,12,15,18";
  std::string weights_file;
  std::size_t queries = kDefaultQueryCount;
  std::string out;
  std::string summary;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto records = generate_synthetic_records(a.options);
  auto file = open_out(a.out);
  write_raw_records(file, records);
  out << fmt::format("wrote {} records with {} fields to {}\n", records.size(),
                     a.options.field_vocabulary.size(), a.out);
  return kExitOk;
}

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  auto in = open_in(a.in);
  const Corpus corpus = build_corpus(read_raw_records(in));
  auto file = open_out(a.out);
  save_corpus(file, corpus);
  std::string vocab;
  for (const auto& v : corpus.vocabularies()) {
    if (!vocab.empty()) vocab += ',';
    vocab += std::to_string(v.size());
  }
  out << fmt::format("n={} s={} vocabulary={}\n", corpus.size(),
                     corpus.field_count(), vocab);
  return kExitOk;
}

std::size_t default_k_clusters(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (k * k < n) ++k;
  return std::max<std::size_t>(k, 1);
}

int cmd_build(const BuildArgs& a, std::ostream& out) {
  const Scheme scheme = scheme_from_string(a.scheme);
  const Corpus corpus = read_corpus_file(a.corpus);
  const std::size_t k =
      a.k_clusters ? a.k_clusters : default_k_clusters(corpus.size());
  const auto start = Clock::now();
  MultiIndex index;
  switch (scheme) {
    case Scheme::kOurs:
      index = build_multi_index(corpus, k, a.clusterings, a.seed);
      break;
    case Scheme::kCellDec:
      index = build_celldec_index(corpus, k, a.theta, GroundMethod::kKMeans,
                                  a.seed);
      break;
    case Scheme::kPods07:
      index = build_celldec_index(corpus, k, a.theta, GroundMethod::kRandom,
                                  a.seed);
      break;
  }
  const double build_s =
      std::chrono::duration<double>(Clock::now() - start).count();

  const std::string bytes = serialize_index(index);
  {
    auto file = open_out(a.out);
    file << bytes;
  }
  {
    nlohmann::ordered_json meta;
    meta["scheme"] = std::string(to_string(scheme));
    meta["preprocessing_time_s"] = build_s;
    meta["index_bytes"] = bytes.size();
    auto file = open_out(meta_path(a.out));
    file << meta.dump(2) << '\n';
  }
  out << fmt::format(
      "scheme={} clusterings={} clusters={} build_time_s={:.6f} "
      "index_bytes={}\n",
      to_string(scheme), index.clusterings.size(), index.total_clusters(),
      build_s, bytes.size());
  return kExitOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const WeightVector weights = parse_weights(a.weights);
  const Corpus corpus = read_corpus_file(a.corpus);
  if (weights.size() != corpus.field_count()) {
    throw ParameterError(fmt::format("{} weights given, corpus has {} fields",
                                     weights.size(), corpus.field_count()));
  }
  const WeightedQuery q{corpus.document(a.doc).fields, weights};
  SearchResult result;
  if (a.exact) {
    result = exhaustive_search(corpus, q, a.k, a.doc);
  } else {
    if (a.index.empty()) throw ParameterError("--index is required without --exact");
    const MultiIndex index = read_index_file(a.index);
    check_fingerprint(index, corpus);
    const std::size_t budget = a.budget ? a.budget : index.total_clusters();
    result = pruned_search(index, corpus, q, {budget, a.k}, a.doc);
  }
  out << "rank,doc_id,distance\n";
  for (std::size_t r = 0; r < result.hits.size(); ++r) {
    out << fmt::format("{},{},{:.9f}\n", r + 1, result.hits[r].id,
                       result.hits[r].distance);
  }
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto budgets = parse_budgets(a.budgets);
  std::vector<WeightVector> weight_sets = default_weight_sets();
  if (!a.weights_file.empty()) {
    auto in = open_in(a.weights_file);
    weight_sets = read_weight_sets(in);
  }
  const Corpus corpus = read_corpus_file(a.corpus);
  for (const auto& w : weight_sets) {
    if (w.size() != corpus.field_count()) {
      throw ParameterError(fmt::format("weight set has {} entries, corpus has {} fields",
                                       w.size(), corpus.field_count()));
    }
  }
  std::vector<MultiIndex> indexes;
  std::vector<EvalIndex> eval_indexes;
  indexes.reserve(a.indexes.size());
  for (const auto& path : a.indexes) {
    indexes.push_back(read_index_file(path));
    eval_indexes.push_back({&indexes.back(), read_build_time(path)});
  }
  const QuerySet qs = sample_query_set(corpus, a.queries, std::move(weight_sets),
                                       a.k, a.seed);
  const EvalReport report = run_experiment(corpus, eval_indexes, qs, budgets);
  {
    auto file = open_out(a.out);
    write_report_csv(file, report);
  }
  const std::string summary = a.summary.empty() ? a.out + ".summary.json" : a.summary;
  {
    auto file = open_out(summary);
    write_report_summary_json(file, report);
  }
  out << fmt::format("{} rows written to {}; summary in {}\n",
                     report.rows.size(), a.out, summary);
  return kExitOk;
}

}  // namespace

WeightVector parse_weights(std::string_view text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    part = trim(part);
    const std::string token(part);
    if (token.empty()) {
      throw ParameterError(fmt::format("malformed weights '{}'", text));
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw ParameterError(fmt::format("malformed weight '{}'", token));
    }
    values.push_back(v);
  }
  return WeightVector::renormalized(std::move(values), kWeightParseTolerance);
}

std::vector<std::size_t> parse_budgets(std::string_view text) {
  std::vector<std::size_t> budgets;
  for (auto part : split(text, ',')) {
    part = trim(part);
    const std::string token(part);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size() || v <= 0) {
      throw ParameterError(fmt::format("malformed budget '{}'", token));
    }
    budgets.push_back(static_cast<std::size_t>(v));
  }
  return budgets;
}

std::vector<WeightVector> read_weight_sets(std::istream& in) {
  std::vector<WeightVector> sets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      sets.push_back(parse_weights(body));
    } catch (const ParameterError& e) {
      throw ParameterError(fmt::format("weights line {}: {}", lineno, e.what()));
    }
  }
  if (sets.empty()) throw ParameterError("weights file holds no weight sets");
  return sets;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dynamic field-weighted similarity search over multi-field "
               "text corpora"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Write a seeded synthetic raw corpus");
  gen_cmd->add_option("--out", gen.out, "Raw JSON-lines output path")->required();
  gen_cmd->add_option("--documents", gen.options.documents, "Number of records")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--topics", gen.options.topics, "Latent topics")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--groups-per-topic", gen.options.groups_per_topic,
                      "Groups inside each topic")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--field-coherence", gen.options.field_coherence,
                      "Probability a field follows the record's group")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--empty-field-rate", gen.options.empty_field_rate,
                      "Probability a field is left empty")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.options.seed, "Generator seed");

  IngestArgs ing;
  auto* ing_cmd = app.add_subcommand("ingest", "Vectorize a raw JSON-lines corpus");
  ing_cmd->add_option("--in", ing.in, "Raw JSON-lines input")->required();
  ing_cmd->add_option("--out", ing.out, "Vectorized corpus output")->required();

  BuildArgs bld;
  auto* bld_cmd = app.add_subcommand("build", "Build a search index");
  bld_cmd->add_option("--corpus", bld.corpus, "Vectorized corpus")->required();
  bld_cmd->add_option("--scheme", bld.scheme, "ours, celldec or pods07")
      ->check(CLI::IsMember({"ours", "celldec", "pods07"}));
  bld_cmd->add_option("--k-clusters", bld.k_clusters,
                      "Clusters per clustering (default ceil(sqrt(n)))");
  bld_cmd->add_option("--clusterings", bld.clusterings,
                      "Independent clusterings for scheme ours")
      ->check(CLI::PositiveNumber);
  bld_cmd->add_option("--theta", bld.theta, "CellDec squeeze factor");
  bld_cmd->add_option("--seed", bld.seed, "Build seed");
  bld_cmd->add_option("--out", bld.out, "Index output path")->required();

  QueryArgs qry;
  auto* qry_cmd = app.add_subcommand("query", "Top-k search for a corpus document");
  qry_cmd->add_option("--index", qry.index, "Index path");
  qry_cmd->add_option("--corpus", qry.corpus, "Vectorized corpus")->required();
  qry_cmd->add_option("--doc", qry.doc, "Query doc_id")->required();
  qry_cmd->add_option("--weights", qry.weights, "Comma-separated field weights")
      ->required();
  qry_cmd->add_option("--k", qry.k, "Result size")->check(CLI::PositiveNumber);
  qry_cmd->add_option("--budget", qry.budget,
                      "Visited clusters (default: all clusters)");
  qry_cmd->add_flag("--exact", qry.exact, "Exhaustive search, no index");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Recall/NAG experiment over indexes");
  ev_cmd->add_option("--index", ev.indexes, "Index path (repeatable)")->required();
  ev_cmd->add_option("--corpus", ev.corpus, "Vectorized corpus")->required();
  ev_cmd->add_option("--seed", ev.seed, "Query sampling seed");
  ev_cmd->add_option("--k", ev.k, "Result size")->check(CLI::PositiveNumber);
  ev_cmd->add_option("--budgets", ev.budgets, "Comma-separated visited-cluster budgets");
  ev_cmd->add_option("--weights-file", ev.weights_file,
                     "One weight set per line (default: seven standard sets)");
  ev_cmd->add_option("--queries", ev.queries, "Number of query documents")
      ->check(CLI::PositiveNumber);
  ev_cmd->add_option("--out", ev.out, "CSV report path")->required();
  ev_cmd->add_option("--summary", ev.summary,
                     "JSON summary path (default: <out>.summary.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*ing_cmd) return cmd_ingest(ing, out);
    if (*bld_cmd) return cmd_build(bld, out);
    if (*qry_cmd) return cmd_query(qry, out);
    if (*ev_cmd) return cmd_eval(ev, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fieldann");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fieldann
