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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fieldann/vecspace.hpp"

namespace fieldann {

struct RawRecord {
  DocId id = 0;
  std::vector<std::string> field_texts;
};

// Lowercase, split on non-alphanumeric runs, drop stop words and tokens
// shorter than two characters, Porter-stem what remains.
std::vector<std::string> tokenize(std::string_view text);

bool is_stop_word(std::string_view token);

/// Terms of one field in first-occurrence order; the position is the term id.
class FieldVocabulary {
 public:
  // Returns the id of `term`, creating it (with df 0) on first sight.
  TermId intern(const std::string& term);
  std::optional<TermId> find(const std::string& term) const;

  void add_document_frequency(TermId id) { ++df_[id]; }
  // Appends a new term with a known df; throws FormatError on a duplicate.
  TermId append(const std::string& term, std::uint32_t df);

  std::size_t size() const { return terms_.size(); }
  const std::string& term(TermId id) const { return terms_[id]; }
  std::uint32_t df(TermId id) const { return df_[id]; }

  friend bool operator==(const FieldVocabulary& a, const FieldVocabulary& b) {
    return a.terms_ == b.terms_ && a.df_ == b.df_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::unordered_map<std::string, TermId> ids_;
};

/// Vectorized multi-field corpus: per-field vocabularies plus one unit-norm
/// (or empty) tf-idf vector per document field.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<FieldVocabulary> vocabularies,
         std::vector<DocumentVectors> documents);

  std::size_t field_count() const { return vocabularies_.size(); }
  std::size_t size() const { return documents_.size(); }

  const std::vector<FieldVocabulary>& vocabularies() const {
    return vocabularies_;
  }
  const std::vector<DocumentVectors>& documents() const { return documents_; }
  const DocumentVectors& at(std::size_t index) const {
    return documents_[index];
  }

  // Position of `id` in documents(), if present.
  std::optional<std::size_t> index_of(DocId id) const;
  // Throws ParameterError for an unknown id.
  const DocumentVectors& document(DocId id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.vocabularies_ == b.vocabularies_ && a.documents_ == b.documents_;
  }

 private:
  std::vector<FieldVocabulary> vocabularies_;
  std::vector<DocumentVectors> documents_;
  std::unordered_map<DocId, std::size_t> index_;
};

inline bool operator==(const DocumentVectors& a, const DocumentVectors& b) {
  return a.id == b.id && a.fields == b.fields;
}

// tf * ln(n / df), L2-normalized per document field. Field count comes from
// the first record; shorter records are padded with empty fields.
// Throws IngestError on an empty input, duplicate ids, or a record with too
// many fields.
Corpus build_corpus(const std::vector<RawRecord>& records);

// One JSON object per line: {"id": <int>, "fields": ["...", ...]}.
// Throws FormatError naming the 1-based line of the first bad record and
// IngestError("empty corpus") when no record is present.
std::vector<RawRecord> read_raw_records(std::istream& in);
void write_raw_records(std::ostream& out, const std::vector<RawRecord>& records);

// Vectorized corpus container: a "VSAX1" header line, one vocabulary line
// per field and one line per document. Doubles are written in shortest
// round-trip form, so save -> load is bit-exact.
void save_corpus(std::ostream& out, const Corpus& corpus);
Corpus load_corpus(std::istream& in);
std::string serialize_corpus(const Corpus& corpus);

// Hex FNV-1a 64 hash of the serialized corpus.
std::string corpus_fingerprint(const Corpus& corpus);
std::string fingerprint_bytes(std::string_view bytes);

}  // namespace fieldann
