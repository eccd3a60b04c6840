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

#include <algorithm>
#include <array>
#include <cctype>

#include "fieldann/ingest.hpp"
#include "fieldann/porter_stemmer.hpp"

namespace fieldann {

namespace {

// Fixed English stop list (127 words, sorted for binary search). Matching
// happens on the lowercased token before stemming.
constexpr std::array<std::string_view, 127> kStopWords = {
    "a",       "about",   "above",   "after",   "again",   "against",
    "all",     "am",      "an",      "and",     "any",     "are",
    "as",      "at",      "be",      "because", "been",    "before",
    "being",   "below",   "between", "both",    "but",     "by",
    "can",     "could",   "did",     "do",      "does",    "doing",
    "down",    "during",  "each",    "few",     "for",     "from",
    "further", "had",     "has",     "have",    "having",  "he",
    "her",     "here",    "hers",    "herself", "him",     "himself",
    "his",     "how",     "i",       "if",      "in",      "into",
    "is",      "it",      "its",     "itself",  "just",    "me",
    "more",    "most",    "my",      "myself",  "no",      "nor",
    "not",     "now",     "of",      "off",     "on",      "once",
    "only",    "or",      "other",   "our",     "ours",    "ourselves",
    "out",     "over",    "own",     "same",    "she",     "should",
    "so",      "some",    "such",    "than",    "that",    "the",
    "their",   "theirs",  "them",    "themselves", "then", "there",
    "these",   "they",    "this",    "those",   "through", "to",
    "too",     "under",   "until",   "up",      "upon",    "very",
    "was",     "we",      "were",    "what",    "when",    "where",
    "which",   "while",   "who",     "whom",    "why",     "will",
    "with",    "would",   "you",     "your",    "yours",   "yourself",
    "yourselves",
};

static_assert(std::is_sorted(kStopWords.begin(), kStopWords.end()));

}  // namespace

bool is_stop_word(std::string_view token) {
  return std::binary_search(kStopWords.begin(), kStopWords.end(), token);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !is_stop_word(current)) {
      tokens.push_back(porter_stem(current));
    }
    current.clear();
  };
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (c < 0x80 && std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace fieldann
