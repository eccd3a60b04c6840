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

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "fieldann/errors.hpp"
#include "fieldann/ingest.hpp"

namespace fieldann {

TermId FieldVocabulary::intern(const std::string& term) {
  auto [it, inserted] =
      ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) {
    terms_.push_back(term);
    df_.push_back(0);
  }
  return it->second;
}

TermId FieldVocabulary::append(const std::string& term, std::uint32_t df) {
  const auto id = static_cast<TermId>(terms_.size());
  if (!ids_.emplace(term, id).second) {
    throw FormatError(fmt::format("duplicate vocabulary term '{}'", term));
  }
  terms_.push_back(term);
  df_.push_back(df);
  return id;
}

std::optional<TermId> FieldVocabulary::find(const std::string& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Corpus::Corpus(std::vector<FieldVocabulary> vocabularies,
               std::vector<DocumentVectors> documents)
    : vocabularies_(std::move(vocabularies)), documents_(std::move(documents)) {
  index_.reserve(documents_.size());
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const auto& doc = documents_[i];
    if (doc.fields.size() != vocabularies_.size()) {
      throw DimensionError(fmt::format(
          "document {} has {} fields, corpus has {}", doc.id,
          doc.fields.size(), vocabularies_.size()));
    }
    if (!index_.emplace(doc.id, i).second) {
      throw IngestError(fmt::format("duplicate doc_id {}", doc.id));
    }
  }
}

std::optional<std::size_t> Corpus::index_of(DocId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const DocumentVectors& Corpus::document(DocId id) const {
  auto idx = index_of(id);
  if (!idx) throw ParameterError(fmt::format("unknown doc_id {}", id));
  return documents_[*idx];
}

Corpus build_corpus(const std::vector<RawRecord>& records) {
  if (records.empty()) throw IngestError("empty corpus");
  const std::size_t s = records.front().field_texts.size();
  if (s == 0) throw IngestError("records have no fields");

  std::unordered_set<DocId> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.id).second) {
      throw IngestError(fmt::format("duplicate doc_id {}", r.id));
    }
    if (r.field_texts.size() > s) {
      throw IngestError(fmt::format("record {} has {} fields, expected {}",
                                    r.id, r.field_texts.size(), s));
    }
  }

  const std::size_t n = records.size();
  std::vector<FieldVocabulary> vocabularies(s);
  // term counts per (document, field), ordered by term id
  std::vector<std::vector<std::map<TermId, std::uint32_t>>> counts(
      n, std::vector<std::map<TermId, std::uint32_t>>(s));

  for (std::size_t d = 0; d < n; ++d) {
    const auto& texts = records[d].field_texts;
    for (std::size_t f = 0; f < texts.size(); ++f) {
      for (const auto& token : tokenize(texts[f])) {
        ++counts[d][f][vocabularies[f].intern(token)];
      }
    }
    for (std::size_t f = 0; f < s; ++f) {
      for (const auto& [term, tf] : counts[d][f]) {
        vocabularies[f].add_document_frequency(term);
      }
    }
  }

  const double n_docs = static_cast<double>(n);
  std::vector<DocumentVectors> documents;
  documents.reserve(n);
  for (std::size_t d = 0; d < n; ++d) {
    DocumentVectors doc;
    doc.id = records[d].id;
    doc.fields.reserve(s);
    for (std::size_t f = 0; f < s; ++f) {
      std::vector<SparseVector::Entry> entries;
      for (const auto& [term, tf] : counts[d][f]) {
        const double idf =
            std::log(n_docs / static_cast<double>(vocabularies[f].df(term)));
        const double w = static_cast<double>(tf) * idf;
        if (w > 0.0) entries.push_back({term, w});
      }
      doc.fields.push_back(
          SparseVector::from_sorted(std::move(entries)).normalized());
    }
    documents.push_back(std::move(doc));
  }
  return Corpus(std::move(vocabularies), std::move(documents));
}

}  // namespace fieldann
