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

#include "oovkit/coverage.h"

#include <algorithm>

#include "json_util.h"
#include "oovkit/error.h"
#include "str_util.h"
#include "utf8.h"

namespace oovkit {

namespace {

using nlohmann::json;
using detail::bigrams_from_json;
using detail::bigrams_to_json;

void require_same_mode(SegmentationMode a, SegmentationMode b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorKind::kModeMismatch,
                std::string(what) + ": segmentation modes differ (" +
                    std::string(to_string(a)) + " vs " + std::string(to_string(b)) + ")");
  }
}

// (frequency desc, word asc)
bool more_frequent(const std::pair<std::uint64_t, std::string>& a,
                   const std::pair<std::uint64_t, std::string>& b) {
  if (a.first != b.first) return a.first > b.first;
  return a.second < b.second;
}

void add_ranges(std::initializer_list<std::pair<char32_t, char32_t>> ranges,
                       std::set<std::string>& out) {
  for (auto [lo, hi] : ranges) {
    for (char32_t cp = lo; cp <= hi; ++cp) {
      std::string s;
      detail::append_utf8(s, cp);
      out.insert(s);
    }
  }
}

ScriptClass parse_script_class(std::string_view s) {
  for (ScriptClass c : {ScriptClass::kDevanagari, ScriptClass::kTamil,
                        ScriptClass::kLatin, ScriptClass::kMixed, ScriptClass::kOther}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorKind::kFormat, "unknown script class '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(CoverageStatus status) {
  return status == CoverageStatus::kIV ? "IV" : "OOV";
}

CoverageStatus parse_coverage_status(std::string_view name) {
  const std::string lower = detail::to_lower_ascii(detail::trim(name));
  if (lower == "iv" || lower == "i") return CoverageStatus::kIV;
  if (lower == "oov" || lower == "o") return CoverageStatus::kOOV;
  throw Error(ErrorKind::kFormat, "unknown coverage status '" + std::string(name) + "'");
}

std::set<Bigram> MissingBigramReport::bigram_set() const {
  std::set<Bigram> out;
  for (const auto& e : entries) out.insert(e.bigram);
  return out;
}

CoverageVerdict classify_word(const WordToken& word, const FrequencyTable& training,
                              SegmentationMode mode) {
  require_same_mode(mode, training.mode, "classify_word");
  CoverageVerdict verdict;
  verdict.word = word;
  for (auto& [bigram, count] : extract_bigrams(word.surface, mode)) {
    if (!training.contains_bigram(bigram)) verdict.missing_bigrams.emplace(bigram, count);
  }
  verdict.status = verdict.missing_bigrams.empty() ? CoverageStatus::kIV
                                                   : CoverageStatus::kOOV;
  return verdict;
}

MissingBigramReport missing_bigram_report(const FrequencyTable& training,
                                          const FrequencyTable& target,
                                          std::uint64_t min_frequency) {
  require_same_mode(training.mode, target.mode, "missing_bigram_report");
  if (min_frequency == 0) {
    throw Error(ErrorKind::kInvalidArgument, "min_frequency must be at least 1");
  }
  MissingBigramReport report;
  report.mode = target.mode;
  report.min_frequency = min_frequency;

  std::map<Bigram, std::vector<std::pair<std::uint64_t, std::string>>> examples;
  for (const auto& [bigram, count] : target.bigram_counts) {
    if (count >= min_frequency && !training.contains_bigram(bigram)) {
      examples[bigram];
    }
  }
  if (!examples.empty()) {
    for (const auto& [word, freq] : target.word_counts) {
      for (const auto& [bigram, n] : extract_bigrams(word, target.mode)) {
        auto it = examples.find(bigram);
        if (it == examples.end()) continue;
        auto& top = it->second;
        std::pair<std::uint64_t, std::string> candidate{freq, word};
        auto pos = std::lower_bound(top.begin(), top.end(), candidate, more_frequent);
        if (static_cast<std::size_t>(pos - top.begin()) < kMaxExampleWords) {
          top.insert(pos, std::move(candidate));
          if (top.size() > kMaxExampleWords) top.pop_back();
        }
      }
    }
  }

  report.entries.reserve(examples.size());
  for (auto& [bigram, top] : examples) {
    MissingBigramEntry entry;
    entry.bigram = bigram;
    entry.target_occurrences = target.bigram_count(bigram);
    for (auto& [freq, word] : top) entry.example_words.push_back(word);
    report.entries.push_back(std::move(entry));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const MissingBigramEntry& a, const MissingBigramEntry& b) {
                     if (a.target_occurrences != b.target_occurrences) {
                       return a.target_occurrences > b.target_occurrences;
                     }
                     return a.bigram < b.bigram;
                   });
  return report;
}

std::vector<CoverageVerdict> find_oov_candidates(const FrequencyTable& training,
                                                 const FrequencyTable& target,
                                                 const MissingBigramReport& report) {
  require_same_mode(training.mode, target.mode, "find_oov_candidates");
  require_same_mode(report.mode, target.mode, "find_oov_candidates");
  const std::set<Bigram> wanted = report.bigram_set();
  struct Ranked {
    std::size_t distinct_report_bigrams;
    CoverageVerdict verdict;
  };
  std::vector<Ranked> ranked;
  if (wanted.empty()) return {};
  for (const auto& [word, freq] : target.word_counts) {
    if (contains_decimal_digit(word)) continue;
    const BigramCounts bigrams = extract_bigrams(word, target.mode);
    std::size_t hits = 0;
    for (const auto& [bigram, n] : bigrams) hits += wanted.contains(bigram) ? 1 : 0;
    if (hits == 0) continue;
    CoverageVerdict verdict =
        classify_word(WordToken{word, classify_script(word)}, training, target.mode);
    verdict.target_frequency = freq;
    ranked.push_back({hits, std::move(verdict)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.distinct_report_bigrams != b.distinct_report_bigrams) {
      return a.distinct_report_bigrams > b.distinct_report_bigrams;
    }
    if (a.verdict.target_frequency != b.verdict.target_frequency) {
      return a.verdict.target_frequency > b.verdict.target_frequency;
    }
    return a.verdict.word.surface < b.verdict.word.surface;
  });
  std::vector<CoverageVerdict> out;
  out.reserve(ranked.size());
  for (auto& r : ranked) out.push_back(std::move(r.verdict));
  return out;
}

VowelPairCounts count_consecutive_vowel_words(const FrequencyTable& table,
                                              const std::set<std::string>& vowel_set) {
  if (vowel_set.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "vowel set must not be empty");
  }
  VowelPairCounts counts;
  for (const auto& [word, freq] : table.word_counts) {
    const std::vector<std::string> units = segment_units(word, table.mode);
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i + 1 < units.size(); ++i) {
      if (vowel_set.contains(units[i]) && vowel_set.contains(units[i + 1])) ++pairs;
    }
    if (pairs > 0) {
      ++counts.word_type_count;
      counts.occurrence_count += pairs;
    }
  }
  return counts;
}

std::set<std::string> default_vowel_set(std::string_view language) {
  const std::string lang = detail::to_lower_ascii(language);
  std::set<std::string> vowels;
  if (lang == "hi" || lang == "hin" || lang == "hindi") {
    add_ranges({{0x0904, 0x0914}, {0x0960, 0x0961}, {0x0972, 0x0977},  // independent
                {0x093A, 0x093B}, {0x093E, 0x094C}, {0x094E, 0x094F},  // signs
                {0x0955, 0x0957}, {0x0962, 0x0963}},
               vowels);
  } else if (lang == "ta" || lang == "tam" || lang == "tamil") {
    add_ranges({{0x0B85, 0x0B8A}, {0x0B8E, 0x0B90}, {0x0B92, 0x0B94},
                {0x0BBE, 0x0BC2}, {0x0BC6, 0x0BC8}, {0x0BCA, 0x0BCC}},
               vowels);
  } else if (lang == "en" || lang == "eng" || lang == "english" || lang == "latin") {
    for (char c : std::string_view("aeiouAEIOU")) vowels.insert(std::string(1, c));
  } else {
    throw Error(ErrorKind::kConfig, "no built-in vowel set for language '" +
                                        std::string(language) + "'");
  }
  return vowels;
}

std::map<std::string, std::set<std::string>> parse_vowel_config(std::string_view text) {
  std::map<std::string, std::set<std::string>> out;
  try {
    const json doc = json::parse(text);
    for (const auto& [lang, list] : doc.items()) {
      if (lang.starts_with("_")) continue;  // comments
      auto& set = out[lang];
      for (const json& v : list) set.insert(v.get<std::string>());
      if (set.empty()) {
        throw Error(ErrorKind::kConfig, "vowel set for '" + lang + "' is empty");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("vowel config: ") + e.what());
  }
  return out;
}

std::string report_to_tsv(const MissingBigramReport& report) {
  std::string out;
  out.append("#oovkit-missing-bigrams\t1\n");
  out.append("#mode\t").append(to_string(report.mode)).append("\n");
  out.append("#min_frequency\t").append(std::to_string(report.min_frequency)).append("\n");
  out.append("first\tsecond\ttarget_occurrences\texample_words\n");
  for (const auto& e : report.entries) {
    out.append(e.bigram.first).append("\t").append(e.bigram.second).append("\t");
    out.append(std::to_string(e.target_occurrences)).append("\t");
    for (std::size_t i = 0; i < e.example_words.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out.append(e.example_words[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string report_to_json(const MissingBigramReport& report,
                           std::string_view provenance_json) {
  json doc;
  doc["format"] = "oovkit-missing-bigrams";
  doc["version"] = 1;
  doc["mode"] = to_string(report.mode);
  doc["min_frequency"] = report.min_frequency;
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"first", e.bigram.first},
                       {"second", e.bigram.second},
                       {"target_occurrences", e.target_occurrences},
                       {"example_words", e.example_words}});
  }
  doc["entries"] = std::move(entries);
  if (!provenance_json.empty()) doc["provenance"] = json::parse(provenance_json);
  return doc.dump(2) + "\n";
}

MissingBigramReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "oovkit-missing-bigrams") {
      throw Error(ErrorKind::kFormat, "not a missing-bigram report");
    }
    MissingBigramReport report;
    report.mode = parse_segmentation_mode(doc.at("mode").get<std::string>());
    report.min_frequency = doc.at("min_frequency").get<std::uint64_t>();
    for (const json& e : doc.at("entries")) {
      MissingBigramEntry entry;
      entry.bigram = {e.at("first").get<std::string>(), e.at("second").get<std::string>()};
      entry.target_occurrences = e.at("target_occurrences").get<std::uint64_t>();
      entry.example_words = e.at("example_words").get<std::vector<std::string>>();
      report.entries.push_back(std::move(entry));
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("missing-bigram report: ") + e.what());
  }
}

std::string verdict_to_json_line(const CoverageVerdict& v) {
  json doc;
  doc["word"] = v.word.surface;
  doc["script"] = to_string(v.word.script_class);
  doc["status"] = to_string(v.status);
  doc["missing_bigrams"] = bigrams_to_json(v.missing_bigrams);
  doc["frequency"] = v.target_frequency;
  return doc.dump();
}

CoverageVerdict verdict_from_json_line(std::string_view line) {
  try {
    const json doc = json::parse(line);
    CoverageVerdict v;
    v.word.surface = doc.at("word").get<std::string>();
    v.word.script_class = doc.contains("script")
                              ? parse_script_class(doc["script"].get<std::string>())
                              : classify_script(v.word.surface);
    v.status = parse_coverage_status(doc.at("status").get<std::string>());
    v.missing_bigrams = bigrams_from_json(doc.at("missing_bigrams"));
    v.target_frequency = doc.value("frequency", std::uint64_t{0});
    if ((v.status == CoverageStatus::kIV) != v.missing_bigrams.empty()) {
      throw Error(ErrorKind::kFormat, "verdict for '" + v.word.surface +
                                          "': status disagrees with missing bigrams");
    }
    return v;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("verdict: ") + e.what());
  }
}

std::vector<CoverageVerdict> verdicts_from_jsonl(std::string_view text) {
  std::vector<CoverageVerdict> out;
  for (std::string_view line : detail::lines_of(text)) {
    if (detail::trim(line).empty()) continue;
    out.push_back(verdict_from_json_line(line));
  }
  return out;
}

}  // namespace oovkit
