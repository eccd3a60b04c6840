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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fieldann/errors.hpp"
#include "fieldann/ingest.hpp"
#include "fieldann/porter_stemmer.hpp"
#include "fieldann/synthetic.hpp"

namespace fieldann {
namespace {

TEST(PorterStemmerTest, ReferenceExamples) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"},   {"ponies", "poni"},       {"ties", "ti"},
      {"caress", "caress"},     {"cats", "cat"},          {"feed", "feed"},
      {"agreed", "agre"},       {"plastered", "plaster"}, {"bled", "bled"},
      {"motoring", "motor"},    {"sing", "sing"},         {"conflated", "conflat"},
      {"troubled", "troubl"},   {"sized", "size"},        {"hopping", "hop"},
      {"tanned", "tan"},        {"falling", "fall"},      {"hissing", "hiss"},
      {"fizzed", "fizz"},       {"failing", "fail"},      {"filing", "file"},
      {"happy", "happi"},       {"sky", "sky"},           {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"},  {"digitizer", "digit"},
      {"hopeful", "hope"},      {"goodness", "good"},     {"revival", "reviv"},
      {"allowance", "allow"},   {"adjustment", "adjust"}, {"effective", "effect"},
      {"probate", "probat"},    {"rate", "rate"},         {"roll", "roll"},
      {"generalizations", "gener"}, {"oscillators", "oscil"},
  };
  for (const auto& [word, stem] : cases) {
    EXPECT_EQ(porter_stem(word), stem) << word;
  }
}

TEST(PorterStemmerTest, ShortWordsUnchanged) {
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("a"), "a");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(TokenizeTest, LowercasesDropsStopWordsAndStems) {
  EXPECT_EQ(tokenize("Clustering clustered clusters"),
            (std::vector<std::string>{"cluster", "cluster", "cluster"}));
  EXPECT_EQ(tokenize("The search OF the Papers"),
            (std::vector<std::string>{"search", "paper"}));
}

TEST(TokenizeTest, PunctuationAndNonAsciiSeparate) {
  EXPECT_EQ(tokenize("k-center,  FPF!"),
            (std::vector<std::string>{"center", "fpf"}));
  EXPECT_EQ(tokenize("na\xc3\xafve x"), (std::vector<std::string>{"na", "ve"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   \t\n").empty());
}

TEST(TokenizeTest, StopWordLookup) {
  EXPECT_TRUE(is_stop_word("the"));
  EXPECT_TRUE(is_stop_word("and"));
  EXPECT_FALSE(is_stop_word("cluster"));
}

std::vector<RawRecord> tiny_records() {
  return {
      {1, {"fast clustering", "alice", "we cluster documents quickly"}},
      {2, {"slow search", "bob", "searching documents slowly"}},
      {3, {"clustering search", "alice bob", ""}},
  };
}

TEST(BuildCorpusTest, TfIdfWeightsAreUnitNormWithLogIdf) {
  const Corpus c = build_corpus(tiny_records());
  ASSERT_EQ(c.size(), 3u);
  ASSERT_EQ(c.field_count(), 3u);
  // title of doc 1: "fast" (df 1) and "cluster" (df 2), tf 1 each.
  const auto& v = c.document(1).fields[0];
  const auto& vocab = c.vocabularies()[0];
  const double fast = std::log(3.0 / 1.0);
  const double clus = std::log(3.0 / 2.0);
  const double norm = std::sqrt(fast * fast + clus * clus);
  EXPECT_NEAR(v.at(*vocab.find("fast")), fast / norm, 1e-12);
  EXPECT_NEAR(v.at(*vocab.find("cluster")), clus / norm, 1e-12);
  EXPECT_EQ(vocab.df(*vocab.find("cluster")), 2u);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_TRUE(c.document(3).fields[2].empty());
}

TEST(BuildCorpusTest, TermInEveryDocumentGetsZeroWeight) {
  const Corpus c = build_corpus({{1, {"shared alpha"}}, {2, {"shared beta"}}});
  const auto id = *c.vocabularies()[0].find("share");
  EXPECT_EQ(c.document(1).fields[0].at(id), 0.0);
  EXPECT_EQ(c.document(1).fields[0].size(), 1u);
}

TEST(BuildCorpusTest, ShortRecordsArePadded) {
  const Corpus c = build_corpus({{1, {"a title", "author"}}, {2, {"title two"}}});
  EXPECT_EQ(c.document(2).fields.size(), 2u);
  EXPECT_TRUE(c.document(2).fields[1].empty());
}

TEST(BuildCorpusTest, Errors) {
  EXPECT_THROW(build_corpus({}), IngestError);
  EXPECT_THROW(build_corpus({{1, {"x1"}}, {1, {"y1"}}}), IngestError);
  EXPECT_THROW(build_corpus({{1, {"x1"}}, {2, {"y1", "z1"}}}), IngestError);
  try {
    build_corpus({});
  } catch (const IngestError& e) {
    EXPECT_STREQ(e.what(), "empty corpus");
  }
}

TEST(RawRecordsTest, RoundTripAndBlankLines) {
  std::stringstream ss;
  write_raw_records(ss, tiny_records());
  std::stringstream padded("\n" + ss.str() + "\n\n");
  const auto back = read_raw_records(padded);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[2].id, 3);
  EXPECT_EQ(back[0].field_texts[2], "we cluster documents quickly");
}

TEST(RawRecordsTest, MalformedLineIsNamed) {
  std::stringstream in;
  for (int i = 1; i <= 6; ++i) {
    in << "{\"id\":" << i << ",\"fields\":[\"t\",\"a\",\"b\"]}\n";
  }
  in << "{\"id\":7,\"fields\":[\"t\",\n";
  try {
    read_raw_records(in);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos) << e.what();
  }
}

TEST(RawRecordsTest, FieldCountMismatchAndEmptyInput) {
  std::stringstream in(
      "{\"id\":1,\"fields\":[\"t\",\"a\"]}\n{\"id\":2,\"fields\":[\"t\"]}\n");
  EXPECT_THROW(read_raw_records(in), FormatError);
  std::stringstream empty("");
  EXPECT_THROW(read_raw_records(empty), IngestError);
}

TEST(CorpusFileTest, RoundTripIsExactAndFingerprintStable) {
  SyntheticCorpusOptions opt;
  opt.documents = 200;
  opt.seed = 4;
  const Corpus c = build_corpus(generate_synthetic_records(opt));
  const std::string bytes = serialize_corpus(c);
  std::stringstream in(bytes);
  const Corpus back = load_corpus(in);
  EXPECT_TRUE(back == c);
  EXPECT_EQ(serialize_corpus(back), bytes);
  EXPECT_EQ(corpus_fingerprint(back), corpus_fingerprint(c));
  EXPECT_EQ(corpus_fingerprint(c), fingerprint_bytes(bytes));
  EXPECT_EQ(corpus_fingerprint(c).size(), 16u);
}

TEST(CorpusFileTest, FingerprintSeesSmallChanges) {
  const Corpus a = build_corpus(tiny_records());
  auto records = tiny_records();
  records[1].field_texts[1] = "carol";
  const Corpus b = build_corpus(records);
  EXPECT_NE(corpus_fingerprint(a), corpus_fingerprint(b));
}

TEST(CorpusFileTest, RejectsCorruptFiles) {
  const std::string good = serialize_corpus(build_corpus(tiny_records()));
  {
    std::stringstream in("{\"magic\":\"NOPE\",\"s\":3,\"n\":3}\n");
    EXPECT_THROW(load_corpus(in), FormatError);
  }
  {
    std::stringstream in(good.substr(0, good.size() / 2));
    EXPECT_THROW(load_corpus(in), FormatError);
  }
  {
    std::stringstream in(good + "{\"extra\":1}\n");
    EXPECT_THROW(load_corpus(in), FormatError);
  }
}

TEST(SyntheticTest, SeededAndSurvivesTokenization) {
  SyntheticCorpusOptions opt;
  opt.documents = 50;
  const auto a = generate_synthetic_records(opt);
  const auto b = generate_synthetic_records(opt);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].field_texts, b[i].field_texts);
  }
  const std::string& title = a[0].field_texts[0];
  std::vector<std::string> words;
  std::stringstream ss(title);
  for (std::string w; ss >> w;) words.push_back(w);
  EXPECT_EQ(tokenize(title), words);
  opt.seed = 2;
  EXPECT_NE(generate_synthetic_records(opt)[0].field_texts,
            a[0].field_texts);
}

TEST(SyntheticTest, EmptyFieldRate) {
  SyntheticCorpusOptions opt;
  opt.documents = 300;
  opt.empty_field_rate = 0.5;
  std::size_t empty = 0;
  for (const auto& r : generate_synthetic_records(opt)) {
    for (const auto& f : r.field_texts) empty += f.empty();
  }
  EXPECT_GT(empty, 300u);
  EXPECT_LT(empty, 600u);
}

}  // namespace
}  // namespace fieldann
