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

#include "oovkit/selection.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "json_util.h"
#include "oovkit/error.h"
#include "oovkit/simd/kernels.h"
#include "str_util.h"

namespace oovkit {

namespace {

using nlohmann::json;

// Report bigrams contained in one candidate, as parallel id/count arrays for
// the capped_gain kernel.
struct CandidateProfile {
  std::string word;
  std::uint64_t frequency = 0;
  std::vector<std::uint32_t> ids;
  std::vector<std::uint32_t> occurrences;
};

struct QueueEntry {
  std::uint64_t gain;
  std::uint32_t rank;
  std::uint32_t candidate;
};

// Priority order: larger gain first, then smaller tie-break rank.
bool outranks(std::uint64_t gain_a, std::uint32_t rank_a, std::uint64_t gain_b,
              std::uint32_t rank_b) {
  return gain_a != gain_b ? gain_a > gain_b : rank_a < rank_b;
}

struct QueueOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    return outranks(b.gain, b.rank, a.gain, a.rank);
  }
};

std::uint64_t gain_of(const CandidateProfile& c, std::span<const std::uint32_t> remaining) {
  return simd::capped_gain(c.ids, c.occurrences, remaining);
}

}  // namespace

std::string_view to_string(TieBreak tie_break) {
  return tie_break == TieBreak::kLexicographic ? "lexicographic" : "frequency_then_lex";
}

TieBreak parse_tie_break(std::string_view name) {
  const std::string lower = detail::to_lower_ascii(name);
  if (lower == "lexicographic" || lower == "lex") return TieBreak::kLexicographic;
  if (lower == "frequency_then_lex" || lower == "freq" || lower == "frequency") {
    return TieBreak::kByFrequencyThenLex;
  }
  throw Error(ErrorKind::kConfig, "unknown tie-break '" + std::string(name) +
                                      "' (expected lexicographic or frequency_then_lex)");
}

void validate(const SelectionConfig& config) {
  if (config.budget == 0) {
    throw Error(ErrorKind::kConfig, "selection budget must be at least 1");
  }
}

SelectionResult select_words_greedy(std::span<const CoverageVerdict> candidates,
                                    const MissingBigramReport& report,
                                    const SelectionConfig& config) {
  validate(config);
  SelectionResult result;
  result.config = config;

  std::vector<Bigram> universe;
  std::map<Bigram, std::uint32_t> bigram_ids;
  for (const auto& entry : report.entries) {
    if (bigram_ids.emplace(entry.bigram, static_cast<std::uint32_t>(universe.size())).second) {
      universe.push_back(entry.bigram);
    }
  }

  std::vector<CandidateProfile> profiles;
  std::unordered_set<std::string> seen;
  for (const CoverageVerdict& v : candidates) {
    if (!seen.insert(v.word.surface).second) continue;
    CandidateProfile p;
    p.word = v.word.surface;
    p.frequency = v.target_frequency;
    for (const auto& [bigram, count] : v.missing_bigrams) {
      auto it = bigram_ids.find(bigram);
      if (it == bigram_ids.end()) continue;
      p.ids.push_back(it->second);
      p.occurrences.push_back(static_cast<std::uint32_t>(
          std::min<std::uint64_t>(count, UINT32_MAX)));
    }
    if (!p.ids.empty()) profiles.push_back(std::move(p));
  }

  std::vector<std::uint32_t> order(profiles.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& pa = profiles[a];
    const auto& pb = profiles[b];
    if (config.tie_break == TieBreak::kByFrequencyThenLex && pa.frequency != pb.frequency) {
      return pa.frequency > pb.frequency;
    }
    return pa.word < pb.word;
  });
  std::vector<std::uint32_t> rank(profiles.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  std::vector<std::uint32_t> remaining(universe.size(), config.k);
  std::vector<bool> picked(profiles.size(), false);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
  for (std::uint32_t i = 0; i < profiles.size(); ++i) {
    queue.push({gain_of(profiles[i], remaining), rank[i], i});
  }

  while (result.chosen.size() < config.budget && !queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    const std::uint64_t gain = gain_of(profiles[top.candidate], remaining);
    if (!queue.empty() && !outranks(gain, top.rank, queue.top().gain, queue.top().rank)) {
      queue.push({gain, top.rank, top.candidate});
      continue;
    }
    if (gain == 0) break;

    if (config.verify_eagerly) {
      for (std::uint32_t i = 0; i < profiles.size(); ++i) {
        if (picked[i] || i == top.candidate) continue;
        const std::uint64_t g = simd::scalar::capped_gain(profiles[i].ids,
                                                          profiles[i].occurrences, remaining);
        if (outranks(g, rank[i], gain, top.rank)) {
          throw Error(ErrorKind::kInternal,
                      "lazy greedy picked '" + profiles[top.candidate].word + "' (gain " +
                          std::to_string(gain) + ") over '" + profiles[i].word +
                          "' (gain " + std::to_string(g) + ")");
        }
      }
    }

    const CandidateProfile& chosen = profiles[top.candidate];
    picked[top.candidate] = true;
    for (std::size_t j = 0; j < chosen.ids.size(); ++j) {
      const std::uint32_t id = chosen.ids[j];
      const std::uint32_t credit = std::min(chosen.occurrences[j], remaining[id]);
      remaining[id] -= credit;
      if (credit > 0) result.credited[universe[id]] += credit;
      result.raw_selected_counts[universe[id]] += chosen.occurrences[j];
    }
    result.chosen.push_back(
        {chosen.word, gain, static_cast<std::uint32_t>(result.chosen.size())});
  }
  return result;
}

CoverageMetrics coverage_of_selection(const SelectionResult& result,
                                      const MissingBigramReport& report) {
  CoverageMetrics metrics;
  if (report.entries.empty()) return metrics;
  std::uint64_t covered = 0;
  std::uint64_t credited_total = 0;
  for (const auto& entry : report.entries) {
    auto it = result.credited.find(entry.bigram);
    const std::uint64_t credit = it == result.credited.end() ? 0 : it->second;
    credited_total += credit;
    if (credit >= 1) {
      ++covered;
    } else {
      metrics.uncovered.push_back(entry.bigram);
    }
  }
  const double n = static_cast<double>(report.entries.size());
  metrics.covered_fraction = static_cast<double>(covered) / n;
  metrics.mean_credited = static_cast<double>(credited_total) / n;
  return metrics;
}

std::string selection_to_json(const SelectionResult& result,
                              const MissingBigramReport& report,
                              std::string_view provenance_json) {
  json doc;
  doc["format"] = "oovkit-selection";
  doc["version"] = 1;
  doc["config"] = {{"k", result.config.k},
                   {"budget", result.config.budget},
                   {"tie_break", to_string(result.config.tie_break)}};
  json chosen = json::array();
  std::uint64_t total = 0;
  for (const auto& c : result.chosen) {
    chosen.push_back({{"step", c.step_index}, {"word", c.word}, {"marginal_gain", c.marginal_gain}});
    total += c.marginal_gain;
  }
  doc["chosen"] = std::move(chosen);
  doc["total_credited"] = total;
  doc["credited"] = detail::bigrams_to_json(result.credited);
  doc["raw_selected_counts"] = detail::bigrams_to_json(result.raw_selected_counts);
  const CoverageMetrics metrics = coverage_of_selection(result, report);
  json uncovered = json::array();
  for (const auto& b : metrics.uncovered) uncovered.push_back({b.first, b.second});
  doc["coverage"] = {{"report_bigrams", report.entries.size()},
                     {"covered_fraction", metrics.covered_fraction},
                     {"mean_credited", metrics.mean_credited},
                     {"uncovered", std::move(uncovered)}};
  if (!provenance_json.empty()) doc["provenance"] = detail::parse_provenance(provenance_json);
  return doc.dump(2) + "\n";
}

SelectionResult selection_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "oovkit-selection") {
      throw Error(ErrorKind::kFormat, "not a selection result");
    }
    SelectionResult result;
    const json& cfg = doc.at("config");
    result.config.k = cfg.at("k").get<std::uint32_t>();
    result.config.budget = cfg.at("budget").get<std::uint32_t>();
    result.config.tie_break = parse_tie_break(cfg.at("tie_break").get<std::string>());
    for (const json& c : doc.at("chosen")) {
      result.chosen.push_back({c.at("word").get<std::string>(),
                               c.at("marginal_gain").get<std::uint64_t>(),
                               c.at("step").get<std::uint32_t>()});
    }
    result.credited = detail::bigrams_from_json(doc.at("credited"));
    result.raw_selected_counts = detail::bigrams_from_json(doc.at("raw_selected_counts"));
    return result;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("selection result: ") + e.what());
  }
}

std::string selection_word_list(const SelectionResult& result) {
  std::string out;
  for (const auto& c : result.chosen) out.append(c.word).append("\n");
  return out;
}

}  // namespace oovkit
