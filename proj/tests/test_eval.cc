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

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "oovkit/error.h"
#include "oovkit/eval.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace oovkit {
namespace {

const CategoryConfig& cats() {
  static const CategoryConfig c = CategoryConfig::defaults();
  return c;
}

RatingRecord rating(bool ok, Category c = Category::kAbbr, Voice v = Voice::kFemale,
                    const std::string& sample = "s", const std::string& rater = "r") {
  RatingRecord r;
  r.sample_id = sample;
  r.language = "Hindi";
  r.category = c;
  r.voice = v;
  r.word = "w";
  r.rater_id = rater;
  r.intelligible = ok;
  return r;
}

CellKey key(const std::string& lang, TtsSystem s, TrainCondition tr, TestCondition te, Category c,
            std::optional<Voice> v = std::nullopt) {
  return CellKey{lang, s, tr, te, c, v};
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

const testing::RateRow& fixture_row(const std::vector<testing::RateRow>& rows, const std::string& lang,
                                    TtsSystem s, TrainCondition tr, TestCondition te) {
  for (const auto& r : rows) {
    if (r.language == lang && r.system == s && r.train == tr && r.test == te) return r;
  }
  throw std::runtime_error("no fixture row");
}

TEST(Ier, Arithmetic) {
  std::vector<RatingRecord> r;
  for (int i = 0; i < 10; ++i) r.push_back(rating(i >= 3, Category::kAbbr, Voice::kFemale, std::to_string(i)));
  const auto t = compute_ier(r, {false});
  const auto* c = t.find(key("Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV,
                             Category::kAbbr, Voice::kFemale));
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->unintelligible, 3u);
  EXPECT_EQ(c->total, 10u);
  EXPECT_DOUBLE_EQ(c->rate, 0.30);

  std::vector<RatingRecord> good(5, rating(true));
  EXPECT_DOUBLE_EQ(compute_ier(good, {false}).cells.begin()->second.rate, 0.0);
  EXPECT_EQ(t.find(key("Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV, Category::kCM,
                       Voice::kFemale)),
            nullptr);
}

TEST(Ier, VoiceAverageIsUnweighted) {
  std::vector<RatingRecord> r;
  for (int i = 0; i < 10; ++i) r.push_back(rating(i >= 1, Category::kAbbr, Voice::kFemale));  // 0.1
  for (int i = 0; i < 4; ++i) r.push_back(rating(i >= 2, Category::kAbbr, Voice::kMale));     // 0.5
  const auto t = compute_ier(r);
  const auto* c = t.find(key("Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV, Category::kAbbr));
  ASSERT_NE(c, nullptr);
  EXPECT_DOUBLE_EQ(c->rate, 0.3);
  EXPECT_TRUE(c->voice_averaged);

  // one voice only: no averaging flag
  std::vector<RatingRecord> f(r.begin(), r.begin() + 10);
  const auto* solo = compute_ier(f).find(
      key("Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV, Category::kAbbr));
  ASSERT_NE(solo, nullptr);
  EXPECT_FALSE(solo->voice_averaged);
  EXPECT_DOUBLE_EQ(solo->rate, 0.1);
}

TEST(Ier, MajorityVoteTieCountsAsUnintelligible) {
  std::vector<RatingRecord> r{rating(true, Category::kAbbr, Voice::kFemale, "a", "r1"),
                              rating(false, Category::kAbbr, Voice::kFemale, "a", "r2"),
                              rating(true, Category::kAbbr, Voice::kFemale, "b", "r1"),
                              rating(true, Category::kAbbr, Voice::kFemale, "b", "r2"),
                              rating(false, Category::kAbbr, Voice::kFemale, "b", "r3")};
  const auto pooled = compute_ier(r, {false, RaterAggregation::kPooled});
  const auto voted = compute_ier(r, {false, RaterAggregation::kMajorityVote});
  EXPECT_DOUBLE_EQ(pooled.cells.begin()->second.rate, 0.4);
  EXPECT_EQ(voted.cells.begin()->second.total, 2u);
  EXPECT_DOUBLE_EQ(voted.cells.begin()->second.rate, 0.5);
}

TEST(Ier, ConcatenationIsCountWeighted) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 50; ++round) {
    std::vector<RatingRecord> a, b;
    for (std::size_t i = 0, n = 1 + rng() % 40; i < n; ++i) a.push_back(rating(rng() % 3 != 0));
    for (std::size_t i = 0, n = 1 + rng() % 40; i < n; ++i) b.push_back(rating(rng() % 2 != 0));
    std::vector<RatingRecord> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto& ca = compute_ier(a, {false}).cells.begin()->second;
    const auto& cb = compute_ier(b, {false}).cells.begin()->second;
    const auto& cab = compute_ier(ab, {false}).cells.begin()->second;
    const double weighted = (ca.rate * ca.total + cb.rate * cb.total) / (ca.total + cb.total);
    EXPECT_NEAR(cab.rate, weighted, 1e-12);
    EXPECT_GE(cab.rate, 0.0);
    EXPECT_LE(cab.rate, 1.0);
  }
}

TEST(RateFixture, EngineeredCellsReproduce) {
  const auto rows = testing::load_rate_rows("ier_by_category.tsv");
  ASSERT_EQ(rows.size(), 16u);
  const auto t = compute_ier(testing::ratings_for_rows(rows, cats()));
  const auto* abbr = t.find(key("Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV, Category::kAbbr));
  ASSERT_NE(abbr, nullptr);
  EXPECT_NEAR(abbr->rate, 0.35, 1e-12);
  for (const auto& row : rows) {
    const auto& order = cats().for_language(row.language);
    for (std::size_t c = 0; c < order.size(); ++c) {
      const auto* cell = t.find(key(row.language, row.system, row.train, row.test, order[c]));
      ASSERT_NE(cell, nullptr);
      EXPECT_NEAR(cell->rate, row.rates[c], 1e-12);
      EXPECT_TRUE(cell->voice_averaged);
    }
  }
}

TEST(RateFixture, CategoryAverages) {
  const auto rows = testing::load_rate_rows("ier_by_category.tsv");
  const auto t = compute_ier(testing::ratings_for_rows(rows, cats()));
  const auto& hi = cats().for_language("hi");
  const double oov = category_average(t, {"Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV}, hi);
  const double iv = category_average(t, {"Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kIV}, hi);
  EXPECT_NEAR(oov, 0.2443, 5e-5);
  EXPECT_NEAR(iv, 0.1214, 5e-5);
  EXPECT_NEAR(oov, mean({0.35, 0.27, 0.08, 0.31, 0.28, 0.21, 0.21}), 1e-12);

  // a category with no ratings is named
  try {
    category_average(t, {"Hindi", TtsSystem::kFP, TrainCondition::kIM1M2, TestCondition::kOOV}, hi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("Abbr"), std::string::npos);
  }
}

TEST(RateFixture, RelativeReductionsNearPublished) {
  const auto rows = testing::load_rate_rows("ier_by_category.tsv");
  struct Case { const char* lang; TtsSystem sys; double recomputed; double published; };
  const Case cases[] = {{"Hindi", TtsSystem::kFP, 40.35, 40.59},
                        {"Tamil", TtsSystem::kFP, 36.30, 36.33},
                        {"Hindi", TtsSystem::kVITS, 21.82, 22.50},
                        {"Tamil", TtsSystem::kVITS, 30.62, 30.94}};
  const auto report = build_eval_report(testing::ratings_for_rows(rows, cats()), {}, {}, cats());
  ASSERT_EQ(report.reductions.size(), 4u);
  for (const auto& c : cases) {
    const double base = mean(fixture_row(rows, c.lang, c.sys, TrainCondition::kI, TestCondition::kOOV).rates);
    const double imp = mean(fixture_row(rows, c.lang, c.sys, TrainCondition::kIO, TestCondition::kOOV).rates);
    const auto r = relative_reduction(base, imp);
    ASSERT_TRUE(r);
    EXPECT_NEAR(*r, c.recomputed, 0.005) << c.lang;
    EXPECT_NEAR(*r, c.published, 1.0) << c.lang;
    bool found = false;
    for (const auto& row : report.reductions) {
      if (row.language == c.lang && row.system == c.sys) {
        found = true;
        ASSERT_TRUE(row.reduction_percent);
        EXPECT_NEAR(*row.reduction_percent, *r, 1e-9);
      }
    }
    EXPECT_TRUE(found) << c.lang;
  }
}

TEST(Reduction, Properties) {
  EXPECT_DOUBLE_EQ(*relative_reduction(0.3, 0.3), 0.0);
  EXPECT_FALSE(relative_reduction(0.0, 0.1));
  EXPECT_THROW(relative_reduction(-0.1, 0.1), Error);
  EXPECT_THROW(relative_reduction(0.1, std::nan("")), Error);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng), s = u(rng);
    EXPECT_NEAR(*relative_reduction(a, b), *relative_reduction(a * s, b * s), 1e-9);
  }
}

TEST(Averaging, VoiceAndCategoryOrderCommute) {
  std::mt19937_64 rng(6);
  const auto& hi = cats().for_language("hi");
  std::vector<RatingRecord> r;
  for (Category c : hi) {
    for (Voice v : {Voice::kFemale, Voice::kMale}) {
      for (std::size_t i = 0, n = 5 + rng() % 30; i < n; ++i) r.push_back(rating(rng() % 4 != 0, c, v));
    }
  }
  const auto per_voice = compute_ier(r, {false});
  const auto averaged = average_voices(per_voice);
  RowFilter f{"Hindi", TtsSystem::kFP, TrainCondition::kI, TestCondition::kOOV};
  const double voice_first = category_average(averaged, f, hi);
  f.voice = Voice::kFemale;
  const double fem = category_average(per_voice, f, hi);
  f.voice = Voice::kMale;
  const double male = category_average(per_voice, f, hi);
  EXPECT_NEAR(voice_first, (fem + male) / 2, 1e-12);
}

TEST(Averaging, IdenticalRatesAverageToThemselves) {
  std::vector<RatingRecord> r;
  for (Category c : cats().for_language("hi")) {
    for (int i = 0; i < 20; ++i) r.push_back(rating(i >= 5, c));
  }
  EXPECT_NEAR(category_average(compute_ier(r), {"Hindi"}, cats().for_language("hi")), 0.25, 1e-12);
}

TEST(GenderFixture, SingleGenderCells) {
  const auto rows = testing::load_gender_rows("single_gender_oov.tsv");
  const auto t = compute_ier(testing::ratings_for_gender_rows(rows, cats()), {false});
  const auto out = single_gender_comparison(t, cats());
  ASSERT_EQ(out.size(), 2u);
  const TrainCondition conds[] = {TrainCondition::kI, TrainCondition::kIM1M2, TrainCondition::kIF1};
  for (const auto& row : rows) {
    const auto it = std::find_if(out.begin(), out.end(), [&](const SingleGenderRow& r) { return r.language == row.language; });
    ASSERT_NE(it, out.end());
    for (std::size_t ci = 0; ci < 3; ++ci) {
      for (std::size_t vi = 0; vi < 2; ++vi) {
        const auto cell = it->cells.at({conds[ci], vi == 0 ? Voice::kFemale : Voice::kMale});
        ASSERT_TRUE(cell);
        EXPECT_NEAR(*cell, row.values[ci * 2 + vi], 1e-12);
      }
    }
  }
  EXPECT_NEAR(*out[0].cells.at({TrainCondition::kI, Voice::kFemale}), 0.28, 1e-12);
}

TEST(GenderFixture, MissingConditionIsAbsent) {
  std::vector<RatingRecord> r;
  for (Category c : cats().for_language("hi")) r.push_back(rating(false, c));
  const auto out = single_gender_comparison(compute_ier(r, {false}), cats());
  ASSERT_TRUE(out.empty() || !out[0].cells.at({TrainCondition::kIF1, Voice::kFemale}).has_value());
}

TEST(Cosine, Examples) {
  EmbeddingVector a{{1, 2, 3}, "a"};
  EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(cosine_similarity({{1, 0}, "x"}, {{0, 1}, "y"}), 0.0);
  EXPECT_THROW(cosine_similarity({{0, 0}, "x"}, {{0, 1}, "y"}), Error);
  EXPECT_THROW(cosine_similarity({{1}, "x"}, {{0, 1}, "y"}), Error);
  EXPECT_THROW(cosine_similarity({{}, "x"}, {{}, "y"}), Error);
  EXPECT_THROW(cosine_similarity({{INFINITY, 1}, "x"}, {{0, 1}, "y"}), Error);
}

TEST(Cosine, MatchesHighPrecisionReference) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 1);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 256;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng);
    const double c = cosine_similarity({a, "a"}, {b, "b"});
    EXPECT_NEAR(c, testing::cosine_reference(a, b), 1e-12);
    EXPECT_NEAR(c, cosine_similarity({b, "b"}, {a, "a"}), 1e-12);
    auto scaled = a;
    for (auto& x : scaled) x *= 37.5;
    EXPECT_NEAR(c, cosine_similarity({scaled, "s"}, {b, "b"}), 1e-12);
  }
}

TEST(Cosine, ParallelVectorsStayInRange) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(1 + rng() % 64);
    for (auto& x : a) x = u(rng);
    auto b = a;
    for (auto& x : b) x *= -3.0;
    const double up = cosine_similarity({a, "a"}, {a, "a"});
    const double down = cosine_similarity({a, "a"}, {b, "b"});
    EXPECT_LE(up, 1.0);
    EXPECT_GE(down, -1.0);
    EXPECT_NEAR(up, 1.0, 1e-12);
    EXPECT_NEAR(down, -1.0, 1e-12);
  }
}

TEST(QualityFixture, QualityCells) {
  const auto rows = testing::load_quality_rows("quality.tsv");
  std::mt19937_64 rng(21);
  std::vector<SimilarityPair> pairs;
  std::vector<QualityScore> scores;
  testing::quality_inputs(rows, rng, pairs, scores);
  const auto out = quality_report(pairs, scores);
  ASSERT_EQ(out.size(), rows.size());
  for (const auto& row : rows) {
    const auto it = std::find_if(out.begin(), out.end(), [&](const QualityRow& q) {
      return q.language == row.language && q.model == row.model && q.voice == row.voice;
    });
    ASSERT_NE(it, out.end()) << row.language << " " << row.model << " " << row.voice;
    EXPECT_NEAR(*it->ssim_base, row.ssim_base, 1e-9);
    EXPECT_NEAR(*it->ssim_finetuned, row.ssim_io, 1e-9);
    EXPECT_NEAR(*it->visqol_base, row.visqol_base, 1e-9);
    EXPECT_NEAR(*it->visqol_finetuned, row.visqol_io, 1e-9);
  }
}

TEST(QualityFixture, IdenticalPairsGiveOne) {
  const QualityKey k{"Hindi", "VITS", "Female", "Base"};
  std::vector<SimilarityPair> p{{k, {{1, 2, 3}, "r"}, {{1, 2, 3}, "s"}}};
  const auto out = quality_report(p, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(*out[0].ssim_base, 1.0, 1e-12);
  EXPECT_FALSE(out[0].ssim_finetuned);
  EXPECT_FALSE(out[0].visqol_base);
}

TEST(QualityFixture, ScoreMeanIsHandMean) {
  const QualityKey k = parse_quality_key("Tamil/FastPitch/Male/I+O");
  EXPECT_EQ(k.variant, "I+O");
  EXPECT_EQ(to_string(k), "Tamil/FastPitch/Male/I+O");
  EXPECT_EQ(parse_quality_key("Tamil/FastPitch/Male/ i ").variant, "Base");
  EXPECT_THROW(parse_quality_key("Tamil/FastPitch/Male/finetuned"), Error);
  EXPECT_THROW(parse_quality_key("Tamil/FastPitch"), Error);
  std::vector<QualityScore> s{{k, 2.5}, {k, 3.0}, {k, 3.7}};
  const auto out = quality_report({}, s);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(*out[0].visqol_finetuned, (2.5 + 3.0 + 3.7) / 3, 1e-12);
}

TEST(Io, RatingsCsvRoundTrip) {
  const auto rows = testing::load_rate_rows("ier_by_category.tsv");
  const auto r = testing::ratings_for_rows({rows[0]}, cats(), 10);
  const auto back = parse_ratings_csv(ratings_to_csv(r));
  ASSERT_EQ(back.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(back[i].sample_id, r[i].sample_id);
    EXPECT_EQ(back[i].category, r[i].category);
    EXPECT_EQ(back[i].voice, r[i].voice);
    EXPECT_EQ(back[i].intelligible, r[i].intelligible);
    EXPECT_EQ(back[i].test_condition, r[i].test_condition);
  }
}

TEST(Io, RatingsCsvErrors) {
  const std::string header =
      "sample_id,language,system,train_condition,test_condition,voice,category,word,rater_id,intelligible\n";
  EXPECT_EQ(parse_ratings_csv(header + "s1,Hindi,FP,I+O,O,Male,Abbr,\"a,b\",r1,0\r\n").at(0).word, "a,b");
  EXPECT_THROW(parse_ratings_csv(header + "s1,Hindi,FP,I,IV,Male,Abbr,w,r1,0.5\n"), Error);
  EXPECT_THROW(parse_ratings_csv(header + "s1,Hindi,XX,I,IV,Male,Abbr,w,r1,1\n"), Error);
  EXPECT_THROW(parse_ratings_csv("a,b\n"), Error);
}

TEST(Io, EmbeddingManifest) {
  const std::string emb = "1,0,0\n1,1,0\n0,1,0\n0,1,0\n";
  const std::string manifest =
      "source_id,pair_id,role,cell\n"
      "u1,p1,reference,Hindi/VITS/Female/Base\n"
      "u1s,p1,synthesized,Hindi/VITS/Female/Base\n"
      "u2,p2,ref,Hindi/VITS/Female/Base\n"
      "u2s,p2,synth,Hindi/VITS/Female/Base\n";
  const auto pairs = pair_embeddings(emb, manifest);
  ASSERT_EQ(pairs.size(), 2u);
  const auto q = quality_report(pairs, {});
  EXPECT_NEAR(*q.at(0).ssim_base, (std::sqrt(0.5) + 1.0) / 2, 1e-12);
  EXPECT_THROW(pair_embeddings("1,0\n", manifest), Error);
  EXPECT_THROW(parse_embeddings("1,x\n"), Error);
  EXPECT_THROW(pair_embeddings("1,0\n", "source_id,pair_id,role,cell\nu,p,reference,Hindi/VITS/Female/Base\n"), Error);
  EXPECT_EQ(parse_quality_csv("cell,score\nHindi/VITS/Male/Base,3.5\n").at(0).score, 3.5);
}

std::vector<std::string> section(const std::string& text, const std::string& title) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("== ", 0) == 0) {
      inside = line.find(title) != std::string::npos;
      continue;
    }
    if (inside && !line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string f; in >> f;) out.push_back(f);
  return out;
}

TEST(Render, EmptyReportKeepsHeaders) {
  const auto text = render_report_text(EvalReport{}, cats());
  for (const char* h : {"by category", "Category-averaged", "Relative OOV", "Single-gender", "similarity"}) {
    EXPECT_NE(text.find(h), std::string::npos) << h;
  }
  EXPECT_EQ(section(text, "by category").size(), 1u);
}

TEST(Render, RateFixtureLayoutAndJsonAgree) {
  const auto rows = testing::load_rate_rows("ier_by_category.tsv");
  const auto gender = testing::load_gender_rows("single_gender_oov.tsv");
  auto ratings = testing::ratings_for_rows(rows, cats());
  // the base-model columns of the gender fixture would land in the FP I cells of the rate fixture
  for (auto& r : testing::ratings_for_gender_rows(gender, cats())) {
    if (r.train_condition != TrainCondition::kI) ratings.push_back(std::move(r));
  }
  std::mt19937_64 rng(3);
  std::vector<SimilarityPair> pairs;
  std::vector<QualityScore> scores;
  testing::quality_inputs(testing::load_quality_rows("quality.tsv"), rng, pairs, scores);
  const auto report = build_eval_report(ratings, pairs, scores, cats());
  const auto json = eval_report_to_json(report, R"({"tool":"t"})");
  const auto back = eval_report_from_json(json);
  EXPECT_EQ(eval_report_to_json(back, R"({"tool":"t"})"), json);
  const auto text = render_report_text(back, cats());
  EXPECT_EQ(text, render_report_text(report, cats()));

  // 4 systems x {I, I+O} x {IV, OOV} plus the single-gender conditions for FP OOV
  const auto table = section(text, "by category");
  std::size_t rate_rows = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto f = fields(table[i]);
    ASSERT_EQ(f.size(), 11u) << table[i];
    const auto train = parse_train_condition(f[2]);
    if (train != TrainCondition::kI && train != TrainCondition::kIO) continue;
    ++rate_rows;
    const auto& order = cats().for_language(f[0]);
    for (std::size_t c = 0; c < 7; ++c) {
      const auto* cell = back.voice_averaged.find(key(f[0], parse_system(f[1]), train, parse_test_condition(f[3]), order[c]));
      ASSERT_NE(cell, nullptr);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", cell->rate);
      EXPECT_EQ(f[4 + c], buf);
      EXPECT_NEAR(cell->rate, fixture_row(rows, f[0], parse_system(f[1]), train, parse_test_condition(f[3])).rates[c], 1e-12);
    }
  }
  EXPECT_EQ(rate_rows, 16u);
  EXPECT_EQ(section(text, "Relative OOV").size(), 5u);
  EXPECT_EQ(section(text, "Single-gender").size(), 3u);
  EXPECT_EQ(section(text, "similarity").size(), 9u);
  EXPECT_NE(text.find("40.35"), std::string::npos);
}

}  // namespace
}  // namespace oovkit
