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

#ifndef OOVKIT_BENCHMARK_H_
#define OOVKIT_BENCHMARK_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "oovkit/category.h"
#include "oovkit/corpus.h"
#include "oovkit/coverage.h"

namespace oovkit {

struct QuotaTargets {
  std::uint32_t iv = 50;
  std::uint32_t oov = 50;

  bool operator==(const QuotaTargets&) const = default;
};

// "50,50" (IV,OOV) or "50" (both).
QuotaTargets parse_targets(std::string_view text);

struct CategoryTally {
  std::uint32_t iv = 0;
  std::uint32_t oov = 0;

  bool operator==(const CategoryTally&) const = default;
};

// Accepted entries per category. Over-collection is allowed; a category is
// complete once both counts reach their targets.
struct QuotaState {
  std::string language;
  std::vector<Category> categories;
  QuotaTargets targets;
  std::map<Category, CategoryTally> counts;

  CategoryTally tally(Category c) const;
  bool complete() const;
  bool oov_short(Category c) const { return tally(c).oov < targets.oov; }
  // Human-readable shortfalls, e.g. "Prop: OOV 40/50".
  std::vector<std::string> shortfalls() const;

  bool operator==(const QuotaState&) const = default;
};

struct BenchmarkEntry {
  std::string id;
  std::string language;
  Category category = Category::kAbbr;
  CoverageStatus status = CoverageStatus::kIV;
  std::string word;
  // Carrier sentence; the bare word when none was supplied.
  std::string sentence;
  BigramCounts missing_bigrams;

  bool operator==(const BenchmarkEntry&) const = default;
};

// Annotation sheet columns, in order:
//   word, status, missing_bigrams, target_frequency, category, accept, notes,
//   sentence
// missing_bigrams holds JSON [[first, second, count], ...]. The category
// header lists the allowed codes, e.g. "category[Abbr|Brand|...]".
std::string export_annotation_sheet(std::span<const CoverageVerdict> candidates,
                                    std::span<const Category> categories);

struct AnnotationRow {
  std::size_t line = 0;
  std::string word;
  std::string status;
  std::string missing_bigrams;
  std::string target_frequency;
  std::string category;
  std::string accept;
  std::string notes;
  std::string sentence;
};

// Raw rows without interpretation. Throws Error(kFormat) for a bad header.
std::vector<AnnotationRow> parse_annotation_sheet(std::string_view sheet);

struct AnnotationReject {
  std::size_t line = 0;
  std::string word;
  std::string reason;
};

struct ImportResult {
  std::vector<BenchmarkEntry> entries;
  QuotaState quota;
  std::vector<AnnotationReject> rejects;
};

// Accepted rows (accept = yes/y/true/1/x) with a valid category become
// entries; each word's IV/OOV status is recomputed against `training` and a
// disagreement with the sheet rejects the row.
ImportResult import_annotations(std::string_view sheet, const FrequencyTable& training,
                                std::span<const Category> categories,
                                const std::string& language, QuotaTargets targets = {});

QuotaState compute_quota(std::span<const BenchmarkEntry> entries,
                         std::span<const Category> categories, const std::string& language,
                         QuotaTargets targets);

struct CategoryGap {
  Category category = Category::kAbbr;
  std::uint32_t oov_count = 0;
  std::uint32_t oov_target = 0;
  // Report bigrams absent from every accepted OOV entry of the category, in
  // report order (frequency descending).
  std::vector<MissingBigramEntry> uncovered;
};

// One element per category whose OOV count is below target.
std::vector<CategoryGap> gap_report(const QuotaState& quota,
                                    std::span<const BenchmarkEntry> entries,
                                    const MissingBigramReport& report);

std::string gap_report_to_tsv(std::span<const CategoryGap> gaps);

// Canonical order (category config order, IV before OOV, word bytewise) with
// ids "<lang>-<Category>-<IV|OOV>-<nnn>".
void canonicalize_entries(std::vector<BenchmarkEntry>& entries,
                          std::span<const Category> categories);

// Canonical benchmark JSON. Throws Error(kValidation) listing shortfalls when
// the quota is incomplete and `force` is false.
std::string build_benchmark(std::span<const BenchmarkEntry> entries, const QuotaState& quota,
                            bool force, std::string_view provenance_json = {});

struct Benchmark {
  QuotaState quota;
  std::vector<BenchmarkEntry> entries;
  bool forced = false;
};

Benchmark parse_benchmark(std::string_view json);

// Import output: entries, quota and rejects.
std::string import_result_to_json(const ImportResult& result,
                                  std::string_view provenance_json = {});
ImportResult import_result_from_json(std::string_view json);

}  // namespace oovkit

#endif  // OOVKIT_BENCHMARK_H_
