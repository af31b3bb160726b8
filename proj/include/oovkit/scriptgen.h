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

#ifndef OOVKIT_SCRIPTGEN_H_
#define OOVKIT_SCRIPTGEN_H_

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "oovkit/corpus.h"

namespace oovkit {

inline constexpr std::uint32_t kDefaultGroupSize = 5;

struct RecordingScript {
  std::vector<std::vector<std::string>> utterances;
  std::uint32_t group_size = kDefaultGroupSize;
  std::uint64_t seed = 0;
  std::string language;

  bool operator==(const RecordingScript&) const = default;
};

// Portable bounded draw: uniform integer in [0, bound) from raw mt19937_64
// output by rejection, so results do not depend on the standard library's
// distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

// Fisher-Yates shuffle driven by uniform_below.
void portable_shuffle(std::vector<std::string>& items, std::uint64_t seed);

// Shuffles `words` with the seeded generator and chunks them into utterances
// of `group_size`; the last utterance keeps any remainder. Throws
// Error(kInvalidArgument) listing duplicates, or for group_size 0.
RecordingScript generate_recording_script(std::span<const std::string> words,
                                          std::uint32_t group_size, std::uint64_t seed,
                                          std::string language = {});

// One utterance per line, words joined by ", ".
std::string render_script(const RecordingScript& script);

// Inverse of render_script; group_size/seed/language are taken from the
// arguments (normally read from the sidecar).
RecordingScript parse_script(std::string_view text, std::uint32_t group_size = kDefaultGroupSize,
                             std::uint64_t seed = 0, std::string language = {});

// Sidecar: seed, group size, language, utterance count and word -> utterance
// index.
std::string script_sidecar_json(const RecordingScript& script,
                                std::string_view provenance_json = {});

struct SharedBigram {
  Bigram bigram;
  std::vector<std::string> script_words;
  std::vector<std::string> benchmark_words;
};

struct ValidationReport {
  bool pass = true;
  // Words present both in the script and in the benchmark.
  std::vector<std::string> benchmark_overlaps;
  // Words appearing more than once in the script.
  std::vector<std::string> repeated_words;
  // Training-absent bigrams that script and benchmark words share. Allowed.
  std::vector<SharedBigram> shared_bigrams;
  std::vector<std::uint32_t> utterance_word_counts;
};

ValidationReport validate_script(const RecordingScript& script,
                                 const std::set<std::string>& benchmark_words,
                                 const FrequencyTable& training);

std::string validation_to_json(const ValidationReport& report);

}  // namespace oovkit

#endif  // OOVKIT_SCRIPTGEN_H_
