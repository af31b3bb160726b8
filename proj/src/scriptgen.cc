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

#include "oovkit/scriptgen.h"

#include <algorithm>
#include <limits>
#include <map>

#include "json_util.h"
#include "oovkit/error.h"
#include "str_util.h"

namespace oovkit {

using nlohmann::json;

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::kInvalidArgument, "uniform_below: bound is 0");
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

void portable_shuffle(std::vector<std::string>& items, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

RecordingScript generate_recording_script(std::span<const std::string> words,
                                          std::uint32_t group_size, std::uint64_t seed,
                                          std::string language) {
  if (group_size == 0) {
    throw Error(ErrorKind::kInvalidArgument, "group_size must be at least 1");
  }
  std::map<std::string_view, std::uint32_t> counts;
  for (const auto& w : words) {
    if (w.empty() || w.find_first_of(" \t\n\r") != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "script words must be non-empty and contain no whitespace: '" + w + "'");
    }
    ++counts[w];
  }
  std::string duplicates;
  for (const auto& [w, n] : counts) {
    if (n > 1) duplicates += (duplicates.empty() ? "" : ", ") + std::string(w);
  }
  if (!duplicates.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "duplicate words in script input: " + duplicates);
  }

  std::vector<std::string> shuffled(words.begin(), words.end());
  portable_shuffle(shuffled, seed);

  RecordingScript script;
  script.group_size = group_size;
  script.seed = seed;
  script.language = std::move(language);
  for (std::size_t i = 0; i < shuffled.size(); i += group_size) {
    const std::size_t end = std::min(shuffled.size(), i + group_size);
    script.utterances.emplace_back(std::make_move_iterator(shuffled.begin() + i),
                                   std::make_move_iterator(shuffled.begin() + end));
  }
  return script;
}

std::string render_script(const RecordingScript& script) {
  std::string out;
  for (const auto& utterance : script.utterances) {
    for (std::size_t i = 0; i < utterance.size(); ++i) {
      if (i > 0) out.append(", ");
      out.append(utterance[i]);
    }
    out.push_back('\n');
  }
  return out;
}

RecordingScript parse_script(std::string_view text, std::uint32_t group_size,
                             std::uint64_t seed, std::string language) {
  RecordingScript script;
  script.group_size = group_size;
  script.seed = seed;
  script.language = std::move(language);
  for (std::string_view line : detail::lines_of(text)) {
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> utterance;
    std::size_t begin = 0;
    while (begin <= line.size()) {
      std::size_t at = line.find(", ", begin);
      if (at == std::string_view::npos) at = line.size();
      const std::string_view word = detail::trim(line.substr(begin, at - begin));
      begin = at + 2;
      if (word.empty()) {
        throw Error(ErrorKind::kFormat, "empty word in script line: " + std::string(line));
      }
      utterance.emplace_back(word);
    }
    script.utterances.push_back(std::move(utterance));
  }
  return script;
}

std::string script_sidecar_json(const RecordingScript& script,
                                std::string_view provenance_json) {
  json doc;
  doc["format"] = "oovkit-recording-script";
  doc["version"] = 1;
  doc["seed"] = script.seed;
  doc["group_size"] = script.group_size;
  doc["language"] = script.language;
  doc["utterances"] = script.utterances.size();
  doc["rng"] = "mt19937_64 + rejection-sampled Fisher-Yates";
  json index = json::object();
  std::size_t words = 0;
  for (std::size_t u = 0; u < script.utterances.size(); ++u) {
    for (const auto& w : script.utterances[u]) {
      index[w] = u;
      ++words;
    }
  }
  doc["words"] = words;
  doc["word_to_utterance"] = std::move(index);
  if (!provenance_json.empty()) doc["provenance"] = detail::parse_provenance(provenance_json);
  return doc.dump(2) + "\n";
}

ValidationReport validate_script(const RecordingScript& script,
                                 const std::set<std::string>& benchmark_words,
                                 const FrequencyTable& training) {
  ValidationReport report;
  std::map<std::string, std::uint32_t> occurrences;
  for (const auto& utterance : script.utterances) {
    report.utterance_word_counts.push_back(static_cast<std::uint32_t>(utterance.size()));
    for (const auto& w : utterance) ++occurrences[w];
  }
  for (const auto& [w, n] : occurrences) {
    if (n > 1) report.repeated_words.push_back(w);
    if (benchmark_words.contains(w)) report.benchmark_overlaps.push_back(w);
  }

  std::map<Bigram, std::pair<std::set<std::string>, std::set<std::string>>> by_bigram;
  const auto collect = [&](const std::string& word, bool from_script) {
    for (const auto& [bigram, n] : extract_bigrams(word, training.mode)) {
      if (training.contains_bigram(bigram)) continue;
      auto& sides = by_bigram[bigram];
      (from_script ? sides.first : sides.second).insert(word);
    }
  };
  for (const auto& [w, n] : occurrences) collect(w, true);
  for (const auto& w : benchmark_words) collect(w, false);
  for (auto& [bigram, sides] : by_bigram) {
    if (sides.first.empty() || sides.second.empty()) continue;
    report.shared_bigrams.push_back(
        {bigram, {sides.first.begin(), sides.first.end()},
         {sides.second.begin(), sides.second.end()}});
  }
  report.pass = report.benchmark_overlaps.empty() && report.repeated_words.empty();
  return report;
}

std::string validation_to_json(const ValidationReport& report) {
  json doc;
  doc["format"] = "oovkit-script-validation";
  doc["pass"] = report.pass;
  doc["benchmark_overlaps"] = report.benchmark_overlaps;
  doc["repeated_words"] = report.repeated_words;
  json shared = json::array();
  for (const auto& s : report.shared_bigrams) {
    shared.push_back({{"bigram", {s.bigram.first, s.bigram.second}},
                      {"script_words", s.script_words},
                      {"benchmark_words", s.benchmark_words}});
  }
  doc["shared_bigrams"] = std::move(shared);
  doc["utterance_word_counts"] = report.utterance_word_counts;
  return doc.dump(2) + "\n";
}

}  // namespace oovkit
