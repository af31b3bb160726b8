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

#include "support/oracles.h"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oovkit::testing {

namespace {

// Returns the code point starting at s[i] and advances i. Input is assumed valid.
char32_t next_cp(std::string_view s, std::size_t& i) {
  const auto b = static_cast<unsigned char>(s[i]);
  int len = b < 0x80 ? 1 : b < 0xE0 ? 2 : b < 0xF0 ? 3 : 4;
  char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
  for (int j = 1; j < len; ++j) cp = (cp << 6) | (static_cast<unsigned char>(s[i + j]) & 0x3F);
  i += len;
  return cp;
}

bool has_digit(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size()) {
    const char32_t cp = next_cp(w, i);
    // ASCII, Devanagari and Tamil decimal digits are enough for the generators
    if ((cp >= U'0' && cp <= U'9') || (cp >= 0x0966 && cp <= 0x096F) ||
        (cp >= 0x0BE6 && cp <= 0x0BEF)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> codepoint_units(std::string_view word) {
  std::vector<std::string> units;
  std::size_t i = 0;
  while (i < word.size()) {
    const std::size_t start = i;
    const char32_t cp = next_cp(word, i);
    const std::string piece(word.substr(start, i - start));
    if ((cp == 0x200C || cp == 0x200D) && !units.empty()) {
      units.back() += piece;
    } else {
      units.push_back(piece);
    }
  }
  return units;
}

PairCounts naive_bigrams(std::string_view word) {
  PairCounts out;
  const auto u = codepoint_units(word);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) ++out[{u[i], u[i + 1]}];
  return out;
}

WordCounts naive_word_counts(const std::vector<std::string>& lines) {
  WordCounts out;
  for (const auto& line : lines) {
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto end = std::min(line.find(' ', pos), line.size());
      if (end > pos) ++out[line.substr(pos, end - pos)];
      pos = end + 1;
    }
  }
  return out;
}

OracleVerdict oracle_classify(std::string_view word, const WordCounts& training) {
  OracleVerdict v;
  for (const auto& [bg, n] : naive_bigrams(word)) {
    bool found = false;
    for (const auto& [tw, tn] : training) {
      const auto tb = naive_bigrams(tw);
      if (tb.count(bg)) {
        found = true;
        break;
      }
    }
    if (!found) v.missing[bg] = n;
  }
  v.oov = !v.missing.empty();
  return v;
}

std::vector<OracleEntry> oracle_report(const WordCounts& training, const WordCounts& target,
                                       std::uint64_t min_frequency) {
  std::set<Pair> train_pairs;
  for (const auto& [w, n] : training) {
    for (const auto& [bg, m] : naive_bigrams(w)) train_pairs.insert(bg);
  }
  PairCounts totals;
  for (const auto& [w, n] : target) {
    for (const auto& [bg, m] : naive_bigrams(w)) totals[bg] += m * n;
  }
  std::vector<OracleEntry> out;
  for (const auto& [bg, total] : totals) {
    if (total < min_frequency || train_pairs.count(bg)) continue;
    OracleEntry e{bg, total, {}};
    std::vector<std::pair<std::uint64_t, std::string>> holders;
    for (const auto& [w, n] : target) {
      if (naive_bigrams(w).count(bg)) holders.push_back({n, w});
    }
    std::sort(holders.begin(), holders.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t i = 0; i < holders.size() && i < 5; ++i) e.examples.push_back(holders[i].second);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const OracleEntry& a, const OracleEntry& b) {
    return a.occurrences != b.occurrences ? a.occurrences > b.occurrences : a.bigram < b.bigram;
  });
  return out;
}

std::vector<std::string> oracle_candidates(const WordCounts& training, const WordCounts& target,
                                           const std::vector<OracleEntry>& report) {
  (void)training;
  struct Row {
    std::size_t hits;
    std::uint64_t freq;
    std::string word;
  };
  std::vector<Row> rows;
  for (const auto& [w, n] : target) {
    if (has_digit(w)) continue;
    const auto bgs = naive_bigrams(w);
    std::size_t hits = 0;
    for (const auto& e : report) hits += bgs.count(e.bigram);
    if (hits > 0) rows.push_back({hits, n, w});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.hits != b.hits) return a.hits > b.hits;
    if (a.freq != b.freq) return a.freq > b.freq;
    return a.word < b.word;
  });
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.word);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> oracle_vowel_pairs(const WordCounts& table,
                                                           const std::set<std::string>& vowels) {
  std::uint64_t types = 0, occ = 0;
  for (const auto& [w, n] : table) {
    const auto u = codepoint_units(w);
    std::uint64_t here = 0;
    for (std::size_t i = 1; i < u.size(); ++i) {
      if (vowels.count(u[i - 1]) && vowels.count(u[i])) ++here;
    }
    if (here) {
      ++types;
      occ += here;
    }
  }
  return {types, occ};
}

std::uint64_t capped_value(const CoverageInstance& inst, const std::vector<std::size_t>& chosen,
                           std::uint32_t k) {
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < inst.bigram_count; ++b) {
    std::uint64_t raw = 0;
    for (auto c : chosen) raw += inst.occurrences[c][b];
    total += std::min<std::uint64_t>(raw, k);
  }
  return total;
}

std::uint64_t exhaustive_optimum(const CoverageInstance& inst, std::uint32_t k,
                                 std::uint32_t budget) {
  const std::size_t n = inst.words.size();
  if (n > 20) throw std::invalid_argument("exhaustive_optimum: too many candidates");
  std::uint64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) > budget) continue;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) chosen.push_back(i);
    }
    best = std::max(best, capped_value(inst, chosen, k));
  }
  return best;
}

double cosine_reference(const std::vector<double>& a, const std::vector<double>& b) {
  using Big = boost::multiprecision::cpp_bin_float_100;
  Big dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += Big(a[i]) * Big(b[i]);
    na += Big(a[i]) * Big(a[i]);
    nb += Big(b[i]) * Big(b[i]);
  }
  return static_cast<double>(dot / (sqrt(na) * sqrt(nb)));
}

}  // namespace oovkit::testing
