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
#include <vector>

#include "fieldann/ingest.hpp"

namespace fieldann {

/// Seeded topic-mixture generator for multi-field text records.
///
/// Every record draws a latent topic and one of that topic's groups (think of
/// a research group: its own authors and jargon). Each field follows the
/// record's group with probability `field_coherence` and otherwise picks a
/// random group. A token comes from the field group's word list with
/// probability `group_word_share`, from a topic word list (mostly the field
/// group's topic, sometimes a secondary one) with probability
/// `topic_word_share`, and otherwise from the field's Zipf background
/// vocabulary. Words end in a digit, so the stemmer leaves them alone and
/// every generated word survives tokenization unchanged.
struct SyntheticCorpusOptions {
  std::size_t documents = 1000;
  std::size_t topics = 40;
  std::vector<std::size_t> field_vocabulary = {2000, 1500, 4000};
  std::vector<std::size_t> field_length = {8, 3, 60};
  std::size_t words_per_topic = 60;
  std::size_t groups_per_topic = 8;
  std::size_t words_per_group = 10;
  double group_word_share = 0.4;
  // Zipf exponent of group popularity; 0 draws groups uniformly
  double group_popularity_exponent = 1.0;
  double topic_word_share = 0.4;
  double secondary_topic_share = 0.0;
  double field_coherence = 1.0;
  double zipf_exponent = 1.0;
  // probability that a field is left empty (e.g. a missing abstract)
  double empty_field_rate = 0.0;
  std::uint64_t seed = 1;
};

std::vector<RawRecord> generate_synthetic_records(
    const SyntheticCorpusOptions& options);

}  // namespace fieldann
