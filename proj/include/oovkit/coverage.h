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

#ifndef OOVKIT_COVERAGE_H_
#define OOVKIT_COVERAGE_H_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oovkit/corpus.h"
#include "oovkit/textcore.h"

namespace oovkit {

enum class CoverageStatus { kIV, kOOV };

std::string_view to_string(CoverageStatus status);
CoverageStatus parse_coverage_status(std::string_view name);

// A word is IV iff every one of its bigrams occurs in the training table.
struct CoverageVerdict {
  WordToken word;
  CoverageStatus status = CoverageStatus::kIV;
  BigramCounts missing_bigrams;
  std::uint64_t target_frequency = 0;

  bool operator==(const CoverageVerdict&) const = default;
};

// Throws Error(kModeMismatch) if `mode` differs from the training table's.
CoverageVerdict classify_word(const WordToken& word, const FrequencyTable& training,
                              SegmentationMode mode);

inline CoverageVerdict classify_word(const WordToken& word,
                                     const FrequencyTable& training) {
  return classify_word(word, training, training.mode);
}

inline constexpr std::uint64_t kDefaultMinFrequency = 10;
inline constexpr std::size_t kMaxExampleWords = 5;

struct MissingBigramEntry {
  Bigram bigram;
  std::uint64_t target_occurrences = 0;
  // Most frequent target words containing the bigram (ties bytewise).
  std::vector<std::string> example_words;

  bool operator==(const MissingBigramEntry&) const = default;
};

// Entries sorted by target_occurrences descending, then bigram ascending.
struct MissingBigramReport {
  SegmentationMode mode = SegmentationMode::kCodepoint;
  std::uint64_t min_frequency = kDefaultMinFrequency;
  std::vector<MissingBigramEntry> entries;

  std::set<Bigram> bigram_set() const;
  bool operator==(const MissingBigramReport&) const = default;
};

// Bigrams with target count >= min_frequency and no training occurrence.
// Throws Error(kModeMismatch) or Error(kInvalidArgument) for min_frequency 0.
MissingBigramReport missing_bigram_report(const FrequencyTable& training,
                                          const FrequencyTable& target,
                                          std::uint64_t min_frequency = kDefaultMinFrequency);

// Target words containing at least one report bigram, excluding words with
// decimal digits. Sorted by (distinct report bigrams contained, target
// frequency) descending, then word ascending.
std::vector<CoverageVerdict> find_oov_candidates(const FrequencyTable& training,
                                                 const FrequencyTable& target,
                                                 const MissingBigramReport& report);

struct VowelPairCounts {
  std::uint64_t word_type_count = 0;
  std::uint64_t occurrence_count = 0;

  bool operator==(const VowelPairCounts&) const = default;
};

// Distinct words with at least one adjacent vowel-vowel unit pair, and the
// number of such adjacent pairs summed over word types (not weighted by word
// frequency). Throws Error(kInvalidArgument) for an empty vowel set.
VowelPairCounts count_consecutive_vowel_words(const FrequencyTable& table,
                                              const std::set<std::string>& vowel_set);

// Built-in vowel inventories ("hi", "ta", "en" and their long names).
// Devanagari and Tamil include both independent vowels and dependent vowel
// signs.
std::set<std::string> default_vowel_set(std::string_view language);

// JSON object {"<lang>": ["a", "e", ...], ...} -> per-language sets.
std::map<std::string, std::set<std::string>> parse_vowel_config(std::string_view json);

// Serialization.
std::string report_to_tsv(const MissingBigramReport& report);
std::string report_to_json(const MissingBigramReport& report,
                           std::string_view provenance_json = {});
MissingBigramReport report_from_json(std::string_view json);
std::string verdict_to_json_line(const CoverageVerdict& verdict);
CoverageVerdict verdict_from_json_line(std::string_view line);
std::vector<CoverageVerdict> verdicts_from_jsonl(std::string_view text);

}  // namespace oovkit

#endif  // OOVKIT_COVERAGE_H_
