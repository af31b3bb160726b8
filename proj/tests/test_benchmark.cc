// Copyright (c) 2026 The oovkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "oovkit/benchmark.h"
#include "oovkit/error.h"
#include "support/checks.h"

namespace oovkit {
namespace {

using Sources = std::vector<std::pair<std::string, std::string>>;

FrequencyTable training() { return ingest_texts(Sources{{"t", "ab bc cd\n"}}); }

const std::vector<Category>& hindi() {
  static const CategoryConfig cfg = CategoryConfig::defaults();
  return cfg.for_language("hi");
}

std::string sheet_header() {
  return "word\tstatus\tmissing_bigrams\ttarget_frequency\tcategory\taccept\tnotes\tsentence\n";
}

std::string row(const std::string& word, const std::string& status, const std::string& cat,
                const std::string& accept, const std::string& sentence = "") {
  return word + "\t" + status + "\t\t1\t" + cat + "\t" + accept + "\t\t" + sentence + "\n";
}

std::size_t data_lines(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty() && line[0] != '#';
  return n;
}

TEST(Categories, PerLanguageSets) {
  const auto& hi = hindi();
  const auto ta = CategoryConfig::defaults().for_language("ta");
  ASSERT_EQ(hi.size(), 7u);
  ASSERT_EQ(ta.size(), 7u);
  EXPECT_NE(std::find(hi.begin(), hi.end(), Category::kCmpy), hi.end());
  EXPECT_NE(std::find(hi.begin(), hi.end(), Category::kGovt), hi.end());
  EXPECT_EQ(std::find(ta.begin(), ta.end(), Category::kGovt), ta.end());
  EXPECT_NE(std::find(ta.begin(), ta.end(), Category::kEdu), ta.end());
  EXPECT_NE(std::find(ta.begin(), ta.end(), Category::kHealth), ta.end());
  EXPECT_THROW(CategoryConfig::defaults().for_language("xx"), Error);
}

TEST(Categories, ShippedConfigMatchesDefaults) {
  std::ifstream in(std::string(OOVKIT_CONFIG_DIR) + "/categories.json");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto cfg = CategoryConfig::from_json(ss.str());
  for (const char* lang : {"hi", "ta"}) {
    EXPECT_EQ(cfg.for_language(lang), CategoryConfig::defaults().for_language(lang));
  }
}

TEST(Export, OneRowPerCandidate) {
  std::vector<CoverageVerdict> c;
  for (int i = 0; i < 1000; ++i) {
    CoverageVerdict v;
    v.word = WordToken{"w" + std::to_string(i), ScriptClass::kLatin};
    v.status = CoverageStatus::kOOV;
    v.missing_bigrams = {{{"w", "0"}, 1}};
    v.target_frequency = 3;
    c.push_back(v);
  }
  EXPECT_EQ(data_lines(export_annotation_sheet(c, hindi())), 1001u);
  EXPECT_EQ(data_lines(export_annotation_sheet({}, hindi())), 1u);
}

TEST(Export, UntouchedRoundTripAcceptsNothing) {
  const auto t = training();
  const auto target = ingest_texts(Sources{{"g", "abx xy ab\n"}});
  const auto report = missing_bigram_report(t, target, 1);
  const auto cands = find_oov_candidates(t, target, report);
  const auto sheet = export_annotation_sheet(cands, hindi());
  const auto r = import_annotations(sheet, t, hindi(), "hi");
  EXPECT_TRUE(r.entries.empty());
  EXPECT_TRUE(r.rejects.empty());
  const auto rows = parse_annotation_sheet(sheet);
  ASSERT_EQ(rows.size(), cands.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].word, cands[i].word.surface);
    EXPECT_EQ(rows[i].status, "OOV");
    EXPECT_EQ(rows[i].target_frequency, std::to_string(cands[i].target_frequency));
  }
}

TEST(Import, AcceptedIVRow) {
  const auto r = import_annotations(sheet_header() + row("abc", "IV", "Abbr", "yes"), training(),
                                    hindi(), "hi");
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, CoverageStatus::kIV);
  EXPECT_EQ(r.entries[0].sentence, "abc");
  EXPECT_EQ(r.quota.tally(Category::kAbbr), (CategoryTally{1, 0}));
}

TEST(Import, StatusMismatchRejected) {
  const auto r = import_annotations(sheet_header() + row("abc", "OOV", "Abbr", "yes"), training(),
                                    hindi(), "hi");
  EXPECT_TRUE(r.entries.empty());
  ASSERT_EQ(r.rejects.size(), 1u);
  EXPECT_NE(r.rejects[0].reason.find("status mismatch"), std::string::npos);
  EXPECT_EQ(r.rejects[0].line, 2u);
}

TEST(Import, UnknownAndUnusedCategoriesRejected) {
  const auto r = import_annotations(
      sheet_header() + row("abc", "IV", "Sports", "yes") + row("ab", "IV", "Edu", "yes"),
      training(), hindi(), "hi");
  EXPECT_TRUE(r.entries.empty());
  ASSERT_EQ(r.rejects.size(), 2u);
  EXPECT_NE(r.rejects[0].reason.find("unknown category"), std::string::npos);
  EXPECT_NE(r.rejects[1].reason.find("not used"), std::string::npos);
}

TEST(Import, MalformedRowsNamedByLine) {
  const auto r = import_annotations(sheet_header() + "abc\tIV\n" + row("ab", "IV", "CM", "perhaps") +
                                        row("zz", "??", "CM", "y"),
                                    training(), hindi(), "hi");
  ASSERT_EQ(r.rejects.size(), 3u);
  EXPECT_EQ(r.rejects[0].line, 2u);
  EXPECT_EQ(r.rejects[1].line, 3u);
  EXPECT_EQ(r.rejects[2].line, 4u);
  for (const auto& x : r.rejects) EXPECT_NE(x.reason.find("malformed"), std::string::npos);
}

TEST(Import, TwentyRowSheetHandTally) {
  // training has ab, bc, cd: words over those bigrams are IV, anything else OOV
  std::string s = sheet_header();
  s += row("ab", "IV", "Abbr", "yes");
  s += row("bc", "IV", "Abbr", "y");
  s += row("abc", "IV", "Abbr", "true", "say abc now");
  s += row("ax", "OOV", "Abbr", "1");
  s += row("xa", "OOV", "Abbr", "x");
  s += row("cd", "IV", "Brand", "yes");
  s += row("bcd", "IV", "Brand", "yes");
  s += row("qq", "OOV", "Brand", "yes");
  s += row("qr", "OOV", "Brand", "");      // not accepted
  s += row("rs", "OOV", "Brand", "no");    // not accepted
  s += row("abcd", "IV", "CM", "yes");
  s += row("st", "OOV", "CM", "yes");
  s += row("tu", "OOV", "CM", "yes");
  s += row("uv", "OOV", "CM", "yes");
  s += row("ab", "IV", "CM", "yes");       // same word, other category: fine
  s += row("ab", "IV", "Abbr", "yes");     // duplicate within Abbr
  s += row("abc", "OOV", "Govt", "yes");   // mismatch
  s += row("vw", "OOV", "Govt", "yes");
  s += row("wx", "OOV", "Nav", "yes");
  s += row("bc", "IV", "Health", "yes");   // not a Hindi category
  const auto r = import_annotations(s, training(), hindi(), "hi");
  EXPECT_EQ(r.quota.tally(Category::kAbbr), (CategoryTally{3, 2}));
  EXPECT_EQ(r.quota.tally(Category::kBrand), (CategoryTally{2, 1}));
  EXPECT_EQ(r.quota.tally(Category::kCM), (CategoryTally{2, 3}));
  EXPECT_EQ(r.quota.tally(Category::kGovt), (CategoryTally{0, 1}));
  EXPECT_EQ(r.quota.tally(Category::kNav), (CategoryTally{0, 1}));
  EXPECT_EQ(r.quota.tally(Category::kProp), (CategoryTally{0, 0}));
  EXPECT_EQ(r.rejects.size(), 3u);
  EXPECT_EQ(r.entries.size(), 15u);
  EXPECT_FALSE(r.quota.complete());
  for (const auto& e : r.entries) {
    if (e.word == "abc") EXPECT_EQ(e.sentence, "say abc now");
  }
}

TEST(Targets, ParseAndDefaults) {
  EXPECT_EQ(QuotaTargets{}, (QuotaTargets{50, 50}));
  EXPECT_EQ(parse_targets("30,70"), (QuotaTargets{30, 70}));
  EXPECT_EQ(parse_targets("30"), (QuotaTargets{30, 30}));
  EXPECT_THROW(parse_targets("x,2"), Error);
}

std::vector<BenchmarkEntry> oov_entries(Category c, std::initializer_list<const char*> words,
                                        const FrequencyTable& t) {
  std::vector<BenchmarkEntry> out;
  for (const char* w : words) {
    BenchmarkEntry e;
    e.language = "hi";
    e.category = c;
    e.word = w;
    e.sentence = w;
    auto v = classify_word(WordToken{w, ScriptClass::kLatin}, t);
    e.status = v.status;
    e.missing_bigrams = v.missing_bigrams;
    out.push_back(e);
  }
  return out;
}

TEST(Gap, HandExample) {
  const auto t = training();
  MissingBigramReport report;
  report.entries = {{{"x", "y"}, 9, {}}, {{"y", "z"}, 4, {}}, {{"q", "q"}, 2, {}}};
  auto entries = oov_entries(Category::kProp, {"qq"}, t);
  auto q = compute_quota(entries, hindi(), "hi", {50, 50});
  q.counts[Category::kProp].oov = 40;
  const auto gaps = gap_report(q, entries, report);
  const auto prop = std::find_if(gaps.begin(), gaps.end(),
                                 [](const CategoryGap& g) { return g.category == Category::kProp; });
  ASSERT_NE(prop, gaps.end());
  ASSERT_EQ(prop->uncovered.size(), 2u);
  EXPECT_EQ(prop->uncovered[0].bigram, (Bigram{"x", "y"}));
  EXPECT_EQ(prop->uncovered[1].bigram, (Bigram{"y", "z"}));
  EXPECT_EQ(prop->oov_count, 40u);
}

TEST(Gap, NothingShortNothingReported) {
  MissingBigramReport report;
  report.entries = {{{"x", "y"}, 9, {}}};
  const auto q = compute_quota({}, hindi(), "hi", {0, 0});
  EXPECT_TRUE(gap_report(q, {}, report).empty());
}

TEST(Gap, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  const auto t = training();
  for (int round = 0; round < 25; ++round) {
    MissingBigramReport report;
    for (char x = 'p'; x <= 'u'; ++x) {
      for (char y = 'p'; y <= 'u'; ++y) {
        if (rng() % 4 == 0) report.entries.push_back({{{x}, {y}}, 1 + rng() % 9, {}});
      }
    }
    std::vector<BenchmarkEntry> entries;
    for (int i = 0; i < 30; ++i) {
      std::string w;
      for (int j = 0, n = 2 + rng() % 3; j < n; ++j) w += static_cast<char>('p' + rng() % 6);
      const Category c = hindi()[rng() % hindi().size()];
      auto e = oov_entries(c, {w.c_str()}, t);
      entries.push_back(e[0]);
    }
    const QuotaTargets targets{0, static_cast<std::uint32_t>(rng() % 8)};
    const auto q = compute_quota(entries, hindi(), "hi", targets);
    const auto gaps = gap_report(q, entries, report);
    std::size_t gi = 0;
    for (Category c : hindi()) {
      std::uint32_t n = 0;
      for (const auto& e : entries) n += e.category == c && e.status == CoverageStatus::kOOV;
      if (n >= targets.oov) continue;
      ASSERT_LT(gi, gaps.size());
      EXPECT_EQ(gaps[gi].category, c);
      std::vector<Bigram> expected;
      for (const auto& r : report.entries) {
        bool used = false;
        for (const auto& e : entries) {
          if (e.category != c) continue;
          for (std::size_t i = 0; i + 1 < e.word.size(); ++i) {
            used |= e.word.substr(i, 1) == r.bigram.first && e.word.substr(i + 1, 1) == r.bigram.second;
          }
        }
        if (!used) expected.push_back(r.bigram);
      }
      std::vector<Bigram> got;
      for (const auto& u : gaps[gi].uncovered) got.push_back(u.bigram);
      EXPECT_EQ(got, expected);
      ++gi;
    }
    EXPECT_EQ(gi, gaps.size());
  }
}

TEST(Build, IncompleteNeedsForce) {
  const auto t = training();
  auto entries = oov_entries(Category::kProp, {"qq"}, t);
  const auto q = compute_quota(entries, hindi(), "hi", {50, 50});
  try {
    build_benchmark(entries, q, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("Prop"), std::string::npos);
  }
  const auto b = parse_benchmark(build_benchmark(entries, q, true));
  EXPECT_TRUE(b.forced);
  EXPECT_EQ(b.entries.size(), 1u);
}

TEST(Build, FullPipelineSevenHundredEntries) {
  const auto run = testing::run_benchmark_pipeline(5, 50);
  EXPECT_EQ(testing::check_benchmark_soundness(run), "");
  EXPECT_TRUE(run.imported.quota.complete());
  ASSERT_EQ(run.parsed.entries.size(), 700u);
  for (Category c : hindi()) {
    EXPECT_EQ(run.parsed.quota.tally(c), (CategoryTally{50, 50})) << to_string(c);
  }
  EXPECT_FALSE(run.parsed.forced);
}

TEST(Build, TamilPipeline) {
  const auto run = testing::run_benchmark_pipeline(6, 10, "ta");
  EXPECT_EQ(testing::check_benchmark_soundness(run), "");
  EXPECT_EQ(run.parsed.entries.size(), 140u);
}

TEST(Build, CanonicalAndLossless) {
  const auto run = testing::run_benchmark_pipeline(7, 5);
  auto shuffled = run.imported.entries;
  std::mt19937_64 rng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  EXPECT_EQ(build_benchmark(shuffled, run.imported.quota, false), run.built);
  EXPECT_EQ(run.parsed.entries, run.imported.entries);
  EXPECT_EQ(run.parsed.quota, run.imported.quota);
  EXPECT_EQ(import_result_from_json(import_result_to_json(run.imported)).entries, run.imported.entries);
}

TEST(Build, DuplicateIdsRejectedOnParse) {
  const auto run = testing::run_benchmark_pipeline(8, 2);
  std::string text = run.built;
  const auto first = run.parsed.entries[0].id;
  const auto second = run.parsed.entries[1].id;
  const auto at = text.find("\"" + second + "\"");
  ASSERT_NE(at, std::string::npos);
  text.replace(at + 1, second.size(), first);
  EXPECT_THROW(parse_benchmark(text), Error);
}

}  // namespace
}  // namespace oovkit
