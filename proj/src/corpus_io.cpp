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
#include "fieldann/ingest.hpp"
#include "json.hpp"

namespace fieldann {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kCorpusMagic = "VSAX1";

ordered_json sparse_to_json(const SparseVector& v) {
  auto arr = ordered_json::array();
  for (const auto& e : v.entries()) arr.push_back({e.term, e.weight});
  return arr;
}

SparseVector sparse_from_json(const ordered_json& arr, std::size_t vocab_size) {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(arr.size());
  for (const auto& pair : arr) {
    const auto term = pair.at(0).get<TermId>();
    const auto weight = pair.at(1).get<double>();
    if (term >= vocab_size) {
      throw FormatError(fmt::format("term id {} outside vocabulary of size {}",
                                    term, vocab_size));
    }
    if (!entries.empty() && entries.back().term >= term) {
      throw FormatError("sparse entries are not strictly increasing");
    }
    if (weight == 0.0) throw FormatError("stored zero weight");
    entries.push_back({term, weight});
  }
  return SparseVector::from_sorted(std::move(entries));
}

bool next_nonblank(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

std::vector<RawRecord> read_raw_records(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t lineno = 0;
  std::size_t field_count = 0;
  while (next_nonblank(in, line, lineno)) {
    RawRecord record;
    try {
      const auto obj = nlohmann::json::parse(line);
      record.id = obj.at("id").get<DocId>();
      record.field_texts = obj.at("fields").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(fmt::format("line {}: {}", lineno, e.what()));
    }
    if (records.empty()) {
      field_count = record.field_texts.size();
      if (field_count == 0) {
        throw FormatError(fmt::format("line {}: record has no fields", lineno));
      }
    } else if (record.field_texts.size() != field_count) {
      throw FormatError(fmt::format("line {}: expected {} fields, found {}",
                                    lineno, field_count,
                                    record.field_texts.size()));
    }
    records.push_back(std::move(record));
  }
  if (records.empty()) throw IngestError("empty corpus");
  return records;
}

void write_raw_records(std::ostream& out,
                       const std::vector<RawRecord>& records) {
  for (const auto& r : records) {
    ordered_json obj;
    obj["id"] = r.id;
    obj["fields"] = r.field_texts;
    out << obj.dump() << '\n';
  }
}

void save_corpus(std::ostream& out, const Corpus& corpus) {
  ordered_json header;
  header["magic"] = kCorpusMagic;
  header["s"] = corpus.field_count();
  header["n"] = corpus.size();
  out << header.dump() << '\n';

  for (std::size_t f = 0; f < corpus.field_count(); ++f) {
    const auto& vocab = corpus.vocabularies()[f];
    auto terms = ordered_json::array();
    for (TermId id = 0; id < vocab.size(); ++id) {
      terms.push_back({vocab.term(id), id, vocab.df(id)});
    }
    ordered_json line;
    line["field"] = f;
    line["terms"] = std::move(terms);
    out << line.dump() << '\n';
  }

  for (const auto& doc : corpus.documents()) {
    ordered_json line;
    line["id"] = doc.id;
    auto fields = ordered_json::array();
    for (const auto& v : doc.fields) fields.push_back(sparse_to_json(v));
    line["fields"] = std::move(fields);
    out << line.dump() << '\n';
  }
}

std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream os;
  save_corpus(os, corpus);
  return std::move(os).str();
}

Corpus load_corpus(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto parse_next = [&](std::string_view what) {
    if (!next_nonblank(in, line, lineno)) {
      throw FormatError(fmt::format("truncated corpus file: missing {}", what));
    }
    try {
      return ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(fmt::format("line {}: {}", lineno, e.what()));
    }
  };

  try {
    const auto header = parse_next("header");
    if (header.at("magic").get<std::string>() != kCorpusMagic) {
      throw FormatError("not a vectorized corpus file (bad magic)");
    }
    const auto s = header.at("s").get<std::size_t>();
    const auto n = header.at("n").get<std::size_t>();

    std::vector<FieldVocabulary> vocabularies(s);
    for (std::size_t f = 0; f < s; ++f) {
      const auto obj = parse_next("vocabulary");
      if (obj.at("field").get<std::size_t>() != f) {
        throw FormatError(fmt::format("line {}: expected field {}", lineno, f));
      }
      for (const auto& t : obj.at("terms")) {
        const auto id = t.at(1).get<TermId>();
        if (id != vocabularies[f].size()) {
          throw FormatError(
              fmt::format("line {}: term ids are not contiguous", lineno));
        }
        vocabularies[f].append(t.at(0).get<std::string>(),
                               t.at(2).get<std::uint32_t>());
      }
    }

    std::vector<DocumentVectors> documents;
    documents.reserve(n);
    for (std::size_t d = 0; d < n; ++d) {
      const auto obj = parse_next("document");
      DocumentVectors doc;
      doc.id = obj.at("id").get<DocId>();
      const auto& fields = obj.at("fields");
      if (fields.size() != s) {
        throw FormatError(fmt::format("line {}: expected {} fields", lineno, s));
      }
      for (std::size_t f = 0; f < s; ++f) {
        doc.fields.push_back(sparse_from_json(fields[f], vocabularies[f].size()));
      }
      documents.push_back(std::move(doc));
    }
    if (next_nonblank(in, line, lineno)) {
      throw FormatError(fmt::format("line {}: trailing data", lineno));
    }
    return Corpus(std::move(vocabularies), std::move(documents));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("line {}: {}", lineno, e.what()));
  } catch (const IngestError& e) {
    throw FormatError(e.what());
  }
}

std::string fingerprint_bytes(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string corpus_fingerprint(const Corpus& corpus) {
  return fingerprint_bytes(serialize_corpus(corpus));
}

}  // namespace fieldann
