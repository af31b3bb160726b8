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

#ifndef OOVKIT_EVAL_H_
#define OOVKIT_EVAL_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oovkit/category.h"

namespace oovkit {

enum class TtsSystem { kFP, kVITS };
// I: original training data; I+O: plus all volunteer OOV recordings;
// I+M1M2 / I+F1: plus only the male / only the female volunteers.
enum class TrainCondition { kI, kIO, kIM1M2, kIF1 };
enum class TestCondition { kIV, kOOV };
enum class Voice { kMale, kFemale };

std::string_view to_string(TtsSystem v);
std::string_view to_string(TrainCondition v);
std::string_view to_string(TestCondition v);
std::string_view to_string(Voice v);
TtsSystem parse_system(std::string_view s);
TrainCondition parse_train_condition(std::string_view s);
TestCondition parse_test_condition(std::string_view s);
Voice parse_voice(std::string_view s);

// One rater's binary judgment of one word-of-interest. Partially
// intelligible words are recorded as unintelligible.
struct RatingRecord {
  std::string sample_id;
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  TrainCondition train_condition = TrainCondition::kI;
  TestCondition test_condition = TestCondition::kOOV;
  Voice voice = Voice::kFemale;
  Category category = Category::kAbbr;
  std::string word;
  std::string rater_id;
  bool intelligible = true;
};

struct CellKey {
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  TrainCondition train = TrainCondition::kI;
  TestCondition test = TestCondition::kOOV;
  Category category = Category::kAbbr;
  // Empty for voice-averaged cells.
  std::optional<Voice> voice;

  auto operator<=>(const CellKey&) const = default;
  bool operator==(const CellKey&) const = default;
};

struct IerCell {
  std::uint64_t unintelligible = 0;
  std::uint64_t total = 0;
  double rate = 0.0;
  // True when the rate is the unweighted mean of a male and a female cell.
  bool voice_averaged = false;
};

struct IERTable {
  std::map<CellKey, IerCell> cells;

  // nullptr when the cell has no ratings.
  const IerCell* find(const CellKey& key) const;
};

enum class RaterAggregation {
  kPooled,        // every rater judgment is one trial
  kMajorityVote,  // one trial per (cell, voice, sample, word); ties count as unintelligible
};

struct IerOptions {
  bool average_voices = true;
  RaterAggregation aggregation = RaterAggregation::kPooled;
};

IERTable compute_ier(std::span<const RatingRecord> ratings, const IerOptions& options = {});

// Collapses the voice dimension: unweighted mean where both voices exist,
// the single voice's rate otherwise.
IERTable average_voices(const IERTable& per_voice);

struct RowFilter {
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  TrainCondition train = TrainCondition::kI;
  TestCondition test = TestCondition::kOOV;
  std::optional<Voice> voice;
};

// Unweighted mean over `categories`. Throws Error(kValidation) naming the
// first missing category.
double category_average(const IERTable& table, const RowFilter& filter,
                        std::span<const Category> categories);

// 100 * (base - improved) / base; nullopt when base is 0. Throws
// Error(kInvalidArgument) for negative or non-finite inputs.
std::optional<double> relative_reduction(double base, double improved);

struct SingleGenderRow {
  std::string language;
  // (condition, TTS voice) -> category-averaged OOV error; nullopt = absent.
  std::map<std::pair<TrainCondition, Voice>, std::optional<double>> cells;
};

// FastPitch OOV errors for conditions I, I+M1M2 and I+F1 per TTS voice.
std::vector<SingleGenderRow> single_gender_comparison(const IERTable& per_voice,
                                                      const CategoryConfig& categories,
                                                      TtsSystem system = TtsSystem::kFP);

struct EmbeddingVector {
  std::vector<double> values;
  std::string source_id;
};

// Throws Error(kInvalidArgument) if empty or non-finite.
void validate(const EmbeddingVector& v);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws Error(kInvalidArgument)
// on length mismatch or a zero vector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// "Hindi/VITS/Female/Base"; variant is "Base" or "I+O".
struct QualityKey {
  std::string language;
  std::string model;
  std::string voice;
  std::string variant;

  auto operator<=>(const QualityKey&) const = default;
  bool operator==(const QualityKey&) const = default;
};

QualityKey parse_quality_key(std::string_view text);
std::string to_string(const QualityKey& key);

struct SimilarityPair {
  QualityKey key;
  EmbeddingVector reference;
  EmbeddingVector synthesized;
};

struct QualityScore {
  QualityKey key;
  double score = 0.0;
};

struct QualityRow {
  std::string language;
  std::string model;
  std::string voice;
  std::optional<double> ssim_base;
  std::optional<double> ssim_finetuned;
  std::optional<double> visqol_base;
  std::optional<double> visqol_finetuned;
};

// Mean cosine similarity (S-SIM) and mean ingested perceptual score per
// (language, model, voice), split into Base and I+O columns.
std::vector<QualityRow> quality_report(std::span<const SimilarityPair> ssim_pairs,
                                       std::span<const QualityScore> visqol_scores);

struct CategoryAverageRow {
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  TrainCondition train = TrainCondition::kI;
  TestCondition test = TestCondition::kOOV;
  double mean = 0.0;
};

struct ReductionRow {
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  double base = 0.0;
  double improved = 0.0;
  std::optional<double> reduction_percent;
};

struct EvalReport {
  IERTable per_voice;
  IERTable voice_averaged;
  std::vector<CategoryAverageRow> category_averages;
  std::vector<ReductionRow> reductions;
  std::vector<SingleGenderRow> single_gender;
  std::vector<QualityRow> quality;
};

EvalReport build_eval_report(std::span<const RatingRecord> ratings,
                             std::span<const SimilarityPair> ssim_pairs,
                             std::span<const QualityScore> visqol_scores,
                             const CategoryConfig& categories,
                             RaterAggregation aggregation = RaterAggregation::kPooled);

// Categories to average over for a language: the configured list when the
// language is known, otherwise those observed in `table`.
std::vector<Category> categories_for(const IERTable& table, const std::string& language,
                                     const CategoryConfig& config);

// --- I/O (eval_io.cc) ---

// Columns exactly: sample_id, language, system, train_condition,
// test_condition, voice, category, word, rater_id, intelligible.
std::vector<RatingRecord> parse_ratings_csv(std::string_view text);
std::string ratings_to_csv(std::span<const RatingRecord> ratings);

// One vector per line, comma-separated reals.
std::vector<std::vector<double>> parse_embeddings(std::string_view text);

// Manifest columns: source_id, pair_id, role (reference|synthesized), cell.
// Row i describes line i of the embeddings file.
std::vector<SimilarityPair> pair_embeddings(std::string_view embeddings_text,
                                            std::string_view manifest_csv);

// Columns: cell, score.
std::vector<QualityScore> parse_quality_csv(std::string_view text);

std::string eval_report_to_json(const EvalReport& report, std::string_view provenance_json = {});
EvalReport eval_report_from_json(std::string_view json);

// Aligned plain-text tables: per-category IER (voice-averaged), category
// averages, relative reductions, single-gender comparison and quality.
std::string render_report_text(const EvalReport& report, const CategoryConfig& categories);

}  // namespace oovkit

#endif  // OOVKIT_EVAL_H_
