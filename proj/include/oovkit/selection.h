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

#ifndef OOVKIT_SELECTION_H_
#define OOVKIT_SELECTION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oovkit/coverage.h"

namespace oovkit {

enum class TieBreak {
  kLexicographic,       // word surface, bytewise ascending
  kByFrequencyThenLex,  // target frequency descending, then bytewise
};

std::string_view to_string(TieBreak tie_break);
TieBreak parse_tie_break(std::string_view name);

inline constexpr std::uint32_t kDefaultCap = 6;
inline constexpr std::uint32_t kDefaultBudget = 2000;

struct SelectionConfig {
  // A report bigram earns credit until its credited count reaches `k`.
  std::uint32_t k = kDefaultCap;
  std::uint32_t budget = kDefaultBudget;
  TieBreak tie_break = TieBreak::kLexicographic;
  // Recompute every candidate's gain at every step and check that the lazy
  // queue picked the true argmax. Quadratic; intended for debugging.
  bool verify_eagerly = false;

  bool operator==(const SelectionConfig&) const = default;
};

// Throws Error(kConfig) when budget is 0.
void validate(const SelectionConfig& config);

struct ChosenWord {
  std::string word;
  std::uint64_t marginal_gain = 0;
  std::uint32_t step_index = 0;

  bool operator==(const ChosenWord&) const = default;
};

struct SelectionResult {
  std::vector<ChosenWord> chosen;
  // Report bigrams with nonzero credit; each value <= config.k.
  BigramCounts credited;
  // Occurrences of report bigrams in the chosen words, uncapped.
  BigramCounts raw_selected_counts;
  SelectionConfig config;

  bool operator==(const SelectionResult&) const = default;
};

// Capped greedy maximum coverage. At every step picks the candidate with the
// largest marginal gain
//     sum over report bigrams b of min(occurrences of b in w, k - credited[b])
// breaking ties with config.tie_break, and stops at the budget or when the
// best gain is 0. Gains are kept in a lazy max-queue; capped coverage is
// submodular, so a stale gain is always an upper bound.
SelectionResult select_words_greedy(std::span<const CoverageVerdict> candidates,
                                    const MissingBigramReport& report,
                                    const SelectionConfig& config);

struct CoverageMetrics {
  // Fraction of report bigrams with credited count >= 1 (0 for an empty
  // report).
  double covered_fraction = 0.0;
  // Mean credited count over all report bigrams, uncovered ones included.
  double mean_credited = 0.0;
  std::vector<Bigram> uncovered;
};

CoverageMetrics coverage_of_selection(const SelectionResult& result,
                                      const MissingBigramReport& report);

std::string selection_to_json(const SelectionResult& result,
                              const MissingBigramReport& report,
                              std::string_view provenance_json = {});
SelectionResult selection_from_json(std::string_view json);
// One word per line, in pick order.
std::string selection_word_list(const SelectionResult& result);

}  // namespace oovkit

#endif  // OOVKIT_SELECTION_H_
