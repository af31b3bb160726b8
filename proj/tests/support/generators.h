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

#ifndef OOVKIT_TESTS_SUPPORT_GENERATORS_H_
#define OOVKIT_TESTS_SUPPORT_GENERATORS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oovkit/category.h"
#include "oovkit/eval.h"

namespace oovkit::testing {

struct LineSpec {
  std::vector<std::string> alphabet;
  std::size_t lines = 20;
  std::size_t max_words = 6;
  std::size_t max_len = 5;
  double digit_prob = 0.0;
  double joiner_prob = 0.0;  // ZWJ after a mid-word virama
};

// Mixed Latin / Devanagari units that survive normalization unchanged.
std::vector<std::string> small_alphabet();
std::vector<std::string> latin_alphabet(char first, char last);

std::string random_word(std::mt19937_64& rng, const LineSpec& spec);
std::vector<std::string> random_lines(std::mt19937_64& rng, const LineSpec& spec);

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

// Per-category rates as printed in the IER table, one row per
// (language, system, train, test).
struct RateRow {
  std::string language;
  TtsSystem system = TtsSystem::kFP;
  TrainCondition train = TrainCondition::kI;
  TestCondition test = TestCondition::kIV;
  std::vector<double> rates;  // in the language's category order
};
std::vector<RateRow> load_rate_rows(const std::string& fixture);

// Synthetic ratings reproducing each row: `trials` judgments per voice per
// category; the female voice is pushed up and the male voice down by the same
// count so the voice average is the printed rate.
std::vector<RatingRecord> ratings_for_rows(const std::vector<RateRow>& rows,
                                           const CategoryConfig& categories,
                                           std::uint32_t trials = 100);

// Single-gender table: values in the order I:F, I:M, I+M1M2:F, I+M1M2:M, I+F1:F, I+F1:M.
struct GenderRow {
  std::string language;
  std::vector<double> values;
};
std::vector<GenderRow> load_gender_rows(const std::string& fixture);
std::vector<RatingRecord> ratings_for_gender_rows(const std::vector<GenderRow>& rows,
                                                  const CategoryConfig& categories);

struct QualityFixtureRow {
  std::string language, model, voice;
  double ssim_base, ssim_io, visqol_base, visqol_io;
};
std::vector<QualityFixtureRow> load_quality_rows(const std::string& fixture);

// Embedding pairs with exactly-known cosines around each target, plus
// perceptual scores averaging to the printed values.
void quality_inputs(const std::vector<QualityFixtureRow>& rows, std::mt19937_64& rng,
                    std::vector<SimilarityPair>& pairs, std::vector<QualityScore>& scores);

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim);
std::vector<double> with_cosine(std::mt19937_64& rng, const std::vector<double>& unit, double c);

}  // namespace oovkit::testing

#endif  // OOVKIT_TESTS_SUPPORT_GENERATORS_H_
