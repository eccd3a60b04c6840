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

#include "fieldann/synthetic.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

#include "fieldann/errors.hpp"
#include "fieldann/random.hpp"

namespace fieldann {

namespace {

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cdf_[r] = total;
    }
    for (auto& c : cdf_) c /= total;
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

std::vector<RawRecord> generate_synthetic_records(
    const SyntheticCorpusOptions& options) {
  const std::size_t s = options.field_vocabulary.size();
  if (s == 0 || options.field_length.size() != s) {
    throw ParameterError("field_vocabulary and field_length must match");
  }
  if (options.documents == 0 || options.topics == 0 ||
      options.groups_per_topic == 0) {
    throw ParameterError("documents, topics and groups must be positive");
  }
  const bool grouped = options.group_word_share > 0.0;
  if (options.group_word_share < 0.0 || options.topic_word_share < 0.0 ||
      options.group_word_share + options.topic_word_share > 1.0) {
    throw ParameterError("word shares must be non-negative and sum to <= 1");
  }
  for (auto v : options.field_vocabulary) {
    if (v < options.words_per_topic || v == 0 ||
        (grouped && v < options.words_per_group)) {
      throw ParameterError("field vocabulary smaller than a topic word list");
    }
  }

  Rng rng(options.seed);
  const std::size_t groups = options.topics * options.groups_per_topic;
  // topic_words[f][t] = word ids of topic t in field f, in rank order;
  // group_words[f][g] likewise for group g (of topic g / groups_per_topic).
  std::vector<std::vector<std::vector<std::size_t>>> topic_words(s);
  std::vector<std::vector<std::vector<std::size_t>>> group_words(s);
  for (std::size_t f = 0; f < s; ++f) {
    topic_words[f].resize(options.topics);
    for (std::size_t t = 0; t < options.topics; ++t) {
      topic_words[f][t] = rng.sample_without_replacement(
          options.field_vocabulary[f], options.words_per_topic);
    }
    if (!grouped) continue;
    group_words[f].resize(groups);
    for (std::size_t g = 0; g < groups; ++g) {
      group_words[f][g] = rng.sample_without_replacement(
          options.field_vocabulary[f], options.words_per_group);
    }
  }
  const ZipfSampler topic_rank(options.words_per_topic, options.zipf_exponent);
  std::vector<ZipfSampler> background;
  for (std::size_t f = 0; f < s; ++f) {
    background.emplace_back(options.field_vocabulary[f], options.zipf_exponent);
  }

  // Popularity ranks are shuffled so that group ids carry no size order.
  const ZipfSampler group_rank(groups, options.group_popularity_exponent);
  std::vector<std::size_t> group_of_rank(groups);
  for (std::size_t g = 0; g < groups; ++g) group_of_rank[g] = g;
  for (std::size_t g = groups; g > 1; --g) {
    std::swap(group_of_rank[g - 1], group_of_rank[rng.uniform_index(g)]);
  }

  std::vector<RawRecord> records;
  records.reserve(options.documents);
  for (std::size_t d = 0; d < options.documents; ++d) {
    RawRecord record;
    record.id = static_cast<DocId>(d);
    const std::size_t primary = group_of_rank[group_rank.draw(rng)];
    for (std::size_t f = 0; f < s; ++f) {
      std::string text;
      const bool empty = rng.uniform01() < options.empty_field_rate;
      const std::size_t group = rng.uniform01() < options.field_coherence
                                    ? primary
                                    : rng.uniform_index(groups);
      const std::size_t main_topic = group / options.groups_per_topic;
      const std::size_t side_topic = rng.uniform_index(options.topics);
      for (std::size_t w = 0; !empty && w < options.field_length[f]; ++w) {
        std::size_t word;
        const double u = rng.uniform01();
        if (u < options.group_word_share) {
          const auto& list = group_words[f][group];
          word = list[rng.uniform_index(list.size())];
        } else if (u < options.group_word_share + options.topic_word_share) {
          const std::size_t topic =
              rng.uniform01() < options.secondary_topic_share ? side_topic
                                                              : main_topic;
          word = topic_words[f][topic][topic_rank.draw(rng)];
        } else {
          word = background[f].draw(rng);
        }
        if (!text.empty()) text += ' ';
        text += fmt::format("f{}w{}x0", f, word);
      }
      record.field_texts.push_back(std::move(text));
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace fieldann
