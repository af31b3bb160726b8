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

#ifndef OOVKIT_CORPUS_H_
#define OOVKIT_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oovkit/textcore.h"

namespace oovkit {

struct SourceEntry {
  std::string id;
  std::uint64_t line_count = 0;

  bool operator==(const SourceEntry&) const = default;
};

// Word and bigram occurrence counts for one corpus. Counts are
// token-weighted and never zero. The manifest is sorted by source id with
// one entry per id.
struct FrequencyTable {
  SegmentationMode mode = SegmentationMode::kCodepoint;
  std::map<std::string, std::uint64_t> word_counts;
  BigramCounts bigram_counts;
  std::vector<SourceEntry> source_manifest;
  std::uint64_t total_word_tokens = 0;
  bool deduplicated = false;

  std::uint64_t word_count(std::string_view word) const;
  std::uint64_t bigram_count(const Bigram& bigram) const;
  bool contains_bigram(const Bigram& bigram) const {
    return bigram_counts.contains(bigram);
  }

  bool operator==(const FrequencyTable&) const = default;
};

FrequencyTable make_empty_table(SegmentationMode mode);

struct NamedStream {
  std::string id;
  std::istream* stream = nullptr;
};

struct IngestOptions {
  SegmentationMode mode = SegmentationMode::kCodepoint;
  // Drop exact duplicate lines (after normalization) within one ingest call.
  bool deduplicate_lines = false;
  // Worker threads for the word-to-bigram expansion. 0 picks the hardware
  // concurrency.
  unsigned workers = 1;
};

inline constexpr std::size_t kMaxLineBytes = 1u << 20;

// Reads every line of every stream. Throws Error(kDecode) naming source and
// line on malformed UTF-8, Error(kFormat) for lines above kMaxLineBytes.
FrequencyTable ingest_corpus(std::span<const NamedStream> sources,
                             const IngestOptions& options = {});

// Convenience for in-memory text; each element is one source.
FrequencyTable ingest_texts(std::span<const std::pair<std::string, std::string>> sources,
                            const IngestOptions& options = {});

// Pointwise sum. Manifest entries with the same source id are coalesced by
// summing their line counts. Throws Error(kModeMismatch).
FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b);

struct StatsSummary {
  std::uint64_t distinct_words = 0;
  std::uint64_t total_word_tokens = 0;
  std::uint64_t distinct_bigrams = 0;
  std::uint64_t total_bigram_occurrences = 0;

  bool operator==(const StatsSummary&) const = default;
};

StatsSummary corpus_stats(const FrequencyTable& table);

// Versioned TSV. Output is canonical: equal tables serialize to equal bytes.
// `provenance_json`, when given, is written as a single "#config" line.
std::string serialize_table(const FrequencyTable& table,
                            std::string_view provenance_json = {});

struct ParsedTable {
  FrequencyTable table;
  std::string provenance_json;
};

ParsedTable parse_table(std::string_view text);

}  // namespace oovkit

#endif  // OOVKIT_CORPUS_H_
