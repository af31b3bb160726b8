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

#include "oovkit/eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>

#include "oovkit/error.h"
#include "oovkit/simd/kernels.h"
#include "str_util.h"

namespace oovkit {

namespace {

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view to_string(TtsSystem v) { return v == TtsSystem::kFP ? "FP" : "VITS"; }

std::string_view to_string(TrainCondition v) {
  switch (v) {
    case TrainCondition::kI: return "I";
    case TrainCondition::kIO: return "I+O";
    case TrainCondition::kIM1M2: return "I+M1M2";
    case TrainCondition::kIF1: return "I+F1";
  }
  return "?";
}

std::string_view to_string(TestCondition v) { return v == TestCondition::kIV ? "IV" : "OOV"; }
std::string_view to_string(Voice v) { return v == Voice::kMale ? "Male" : "Female"; }

TtsSystem parse_system(std::string_view s) {
  const auto k = squash(s);
  if (k == "fp" || k == "fastpitch") return TtsSystem::kFP;
  if (k == "vits") return TtsSystem::kVITS;
  throw Error(ErrorKind::kFormat, "unknown TTS system: " + std::string(s));
}

TrainCondition parse_train_condition(std::string_view s) {
  const auto k = squash(s);
  if (k == "i" || k == "base") return TrainCondition::kI;
  if (k == "i+o") return TrainCondition::kIO;
  if (k == "i+m1m2" || k == "i+m1+m2" || k == "base+m1+m2") return TrainCondition::kIM1M2;
  if (k == "i+f1" || k == "base+f1") return TrainCondition::kIF1;
  throw Error(ErrorKind::kFormat, "unknown training condition: " + std::string(s));
}

TestCondition parse_test_condition(std::string_view s) {
  const auto k = squash(s);
  if (k == "iv" || k == "i") return TestCondition::kIV;
  if (k == "oov" || k == "o") return TestCondition::kOOV;
  throw Error(ErrorKind::kFormat, "unknown test condition: " + std::string(s));
}

Voice parse_voice(std::string_view s) {
  const auto k = squash(s);
  if (k == "male" || k == "m") return Voice::kMale;
  if (k == "female" || k == "f") return Voice::kFemale;
  throw Error(ErrorKind::kFormat, "unknown voice: " + std::string(s));
}

const IerCell* IERTable::find(const CellKey& key) const {
  auto it = cells.find(key);
  return it == cells.end() ? nullptr : &it->second;
}

IERTable compute_ier(std::span<const RatingRecord> ratings, const IerOptions& options) {
  IERTable per_voice;
  auto key_of = [](const RatingRecord& r) {
    return CellKey{r.language, r.system, r.train_condition, r.test_condition, r.category, r.voice};
  };
  if (options.aggregation == RaterAggregation::kPooled) {
    for (const auto& r : ratings) {
      auto& cell = per_voice.cells[key_of(r)];
      ++cell.total;
      if (!r.intelligible) ++cell.unintelligible;
    }
  } else {
    // (cell, sample, word) -> (unintelligible votes, votes)
    std::map<std::tuple<CellKey, std::string, std::string>, std::pair<std::uint64_t, std::uint64_t>>
        votes;
    for (const auto& r : ratings) {
      auto& v = votes[{key_of(r), r.sample_id, r.word}];
      ++v.second;
      if (!r.intelligible) ++v.first;
    }
    for (const auto& [k, v] : votes) {
      auto& cell = per_voice.cells[std::get<0>(k)];
      ++cell.total;
      if (2 * v.first >= v.second) ++cell.unintelligible;
    }
  }
  for (auto& [k, cell] : per_voice.cells) {
    cell.rate = static_cast<double>(cell.unintelligible) / static_cast<double>(cell.total);
  }
  return options.average_voices ? average_voices(per_voice) : per_voice;
}

IERTable average_voices(const IERTable& per_voice) {
  std::map<CellKey, std::vector<const IerCell*>> groups;
  for (const auto& [k, cell] : per_voice.cells) {
    CellKey g = k;
    g.voice.reset();
    groups[g].push_back(&cell);
  }
  IERTable out;
  for (const auto& [k, cells] : groups) {
    IerCell merged;
    double sum = 0.0;
    for (const auto* c : cells) {
      merged.unintelligible += c->unintelligible;
      merged.total += c->total;
      sum += c->rate;
    }
    merged.rate = sum / static_cast<double>(cells.size());
    merged.voice_averaged = cells.size() > 1;
    out.cells.emplace(k, merged);
  }
  return out;
}

double category_average(const IERTable& table, const RowFilter& filter,
                        std::span<const Category> categories) {
  if (categories.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "category_average: no categories");
  }
  double sum = 0.0;
  for (Category c : categories) {
    const auto* cell =
        table.find(CellKey{filter.language, filter.system, filter.train, filter.test, c, filter.voice});
    if (cell == nullptr) {
      std::string where = filter.language + "/" + std::string(to_string(filter.system)) + "/" +
                          std::string(to_string(filter.train)) + "/" +
                          std::string(to_string(filter.test));
      if (filter.voice) where += "/" + std::string(to_string(*filter.voice));
      throw Error(ErrorKind::kValidation,
                  "missing category " + std::string(to_string(c)) + " for " + where);
    }
    sum += cell->rate;
  }
  return sum / static_cast<double>(categories.size());
}

std::optional<double> relative_reduction(double base, double improved) {
  if (!std::isfinite(base) || !std::isfinite(improved) || base < 0 || improved < 0) {
    throw Error(ErrorKind::kInvalidArgument, "relative_reduction: rates must be finite and >= 0");
  }
  if (base == 0.0) return std::nullopt;
  return 100.0 * (base - improved) / base;
}

std::vector<Category> categories_for(const IERTable& table, const std::string& language,
                                     const CategoryConfig& config) {
  if (config.has_language(language)) return config.for_language(language);
  std::set<Category> seen;
  for (const auto& [k, cell] : table.cells) {
    if (k.language == language) seen.insert(k.category);
  }
  return {seen.begin(), seen.end()};
}

std::vector<SingleGenderRow> single_gender_comparison(const IERTable& per_voice,
                                                      const CategoryConfig& categories,
                                                      TtsSystem system) {
  std::set<std::string> languages;
  for (const auto& [k, cell] : per_voice.cells) {
    if (k.system == system && k.voice &&
        (k.train == TrainCondition::kIM1M2 || k.train == TrainCondition::kIF1)) {
      languages.insert(k.language);
    }
  }
  std::vector<SingleGenderRow> rows;
  for (const auto& lang : languages) {
    const auto cats = categories_for(per_voice, lang, categories);
    SingleGenderRow row;
    row.language = lang;
    for (auto cond : {TrainCondition::kI, TrainCondition::kIM1M2, TrainCondition::kIF1}) {
      for (auto voice : {Voice::kFemale, Voice::kMale}) {
        std::optional<double> v;
        try {
          v = category_average(per_voice, RowFilter{lang, system, cond, TestCondition::kOOV, voice},
                               cats);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kValidation) throw;
        }
        row.cells[{cond, voice}] = v;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void validate(const EmbeddingVector& v) {
  if (v.values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "embedding " + v.source_id + " is empty");
  }
  for (double x : v.values) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kInvalidArgument, "embedding " + v.source_id + " has a non-finite value");
    }
  }
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  validate(a);
  validate(b);
  if (a.values.size() != b.values.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "embedding length mismatch: " + std::to_string(a.values.size()) + " vs " +
                    std::to_string(b.values.size()));
  }
  const auto r = simd::dot_norms(a.values, b.values);
  if (r.norm_a_sq == 0.0 || r.norm_b_sq == 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "cosine of a zero vector");
  }
  // sqrt of each separately, the product can underflow/overflow
  const double c = r.dot / (std::sqrt(r.norm_a_sq) * std::sqrt(r.norm_b_sq));
  return std::clamp(c, -1.0, 1.0);
}

QualityKey parse_quality_key(std::string_view text) {
  const auto parts = detail::split(text, '/');
  if (parts.size() != 4) {
    throw Error(ErrorKind::kFormat,
                "quality cell must be Language/Model/Voice/Variant: " + std::string(text));
  }
  QualityKey k{std::string(detail::trim(parts[0])), std::string(detail::trim(parts[1])),
               std::string(detail::trim(parts[2])), std::string(detail::trim(parts[3]))};
  const auto variant = squash(k.variant);
  if (variant == "base" || variant == "i") {
    k.variant = "Base";
  } else if (variant == "i+o") {
    k.variant = "I+O";
  } else {
    throw Error(ErrorKind::kFormat, "quality variant must be Base or I+O: " + k.variant);
  }
  for (const auto* f : {&k.language, &k.model, &k.voice}) {
    if (f->empty()) throw Error(ErrorKind::kFormat, "empty field in quality cell: " + std::string(text));
  }
  return k;
}

std::string to_string(const QualityKey& key) {
  return key.language + "/" + key.model + "/" + key.voice + "/" + key.variant;
}

std::vector<QualityRow> quality_report(std::span<const SimilarityPair> ssim_pairs,
                                       std::span<const QualityScore> visqol_scores) {
  using RowKey = std::tuple<std::string, std::string, std::string>;
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<RowKey, std::map<std::string, Acc>> ssim, visqol;
  std::set<RowKey> keys;
  for (const auto& p : ssim_pairs) {
    RowKey rk{p.key.language, p.key.model, p.key.voice};
    auto& a = ssim[rk][p.key.variant];
    a.sum += cosine_similarity(p.reference, p.synthesized);
    ++a.n;
    keys.insert(rk);
  }
  for (const auto& s : visqol_scores) {
    if (!std::isfinite(s.score)) {
      throw Error(ErrorKind::kInvalidArgument, "non-finite score for " + to_string(s.key));
    }
    RowKey rk{s.key.language, s.key.model, s.key.voice};
    auto& a = visqol[rk][s.key.variant];
    a.sum += s.score;
    ++a.n;
    keys.insert(rk);
  }
  auto mean = [](const std::map<RowKey, std::map<std::string, Acc>>& m, const RowKey& rk,
                 const char* variant) -> std::optional<double> {
    auto it = m.find(rk);
    if (it == m.end()) return std::nullopt;
    auto jt = it->second.find(variant);
    if (jt == it->second.end() || jt->second.n == 0) return std::nullopt;
    return jt->second.sum / static_cast<double>(jt->second.n);
  };
  std::vector<QualityRow> rows;
  for (const auto& rk : keys) {
    QualityRow row;
    std::tie(row.language, row.model, row.voice) = rk;
    row.ssim_base = mean(ssim, rk, "Base");
    row.ssim_finetuned = mean(ssim, rk, "I+O");
    row.visqol_base = mean(visqol, rk, "Base");
    row.visqol_finetuned = mean(visqol, rk, "I+O");
    rows.push_back(std::move(row));
  }
  return rows;
}

EvalReport build_eval_report(std::span<const RatingRecord> ratings,
                             std::span<const SimilarityPair> ssim_pairs,
                             std::span<const QualityScore> visqol_scores,
                             const CategoryConfig& categories, RaterAggregation aggregation) {
  EvalReport report;
  report.per_voice = compute_ier(ratings, IerOptions{false, aggregation});
  report.voice_averaged = average_voices(report.per_voice);

  std::set<std::tuple<std::string, TtsSystem, TrainCondition, TestCondition>> rows;
  for (const auto& [k, cell] : report.voice_averaged.cells) {
    rows.insert({k.language, k.system, k.train, k.test});
  }
  for (const auto& [lang, sys, train, test] : rows) {
    const auto cats = categories_for(report.voice_averaged, lang, categories);
    bool complete = true;
    for (Category c : cats) {
      if (!report.voice_averaged.find(CellKey{lang, sys, train, test, c, std::nullopt})) {
        complete = false;
        break;
      }
    }
    if (!complete) continue;
    report.category_averages.push_back(CategoryAverageRow{
        lang, sys, train, test,
        category_average(report.voice_averaged, RowFilter{lang, sys, train, test, std::nullopt}, cats)});
  }

  auto find_avg = [&](const std::string& lang, TtsSystem sys,
                      TrainCondition train) -> const CategoryAverageRow* {
    for (const auto& r : report.category_averages) {
      if (r.language == lang && r.system == sys && r.train == train && r.test == TestCondition::kOOV) {
        return &r;
      }
    }
    return nullptr;
  };
  std::set<std::pair<std::string, TtsSystem>> systems;
  for (const auto& r : report.category_averages) systems.insert({r.language, r.system});
  for (const auto& [lang, sys] : systems) {
    const auto* base = find_avg(lang, sys, TrainCondition::kI);
    const auto* improved = find_avg(lang, sys, TrainCondition::kIO);
    if (!base || !improved) continue;
    report.reductions.push_back(ReductionRow{lang, sys, base->mean, improved->mean,
                                             relative_reduction(base->mean, improved->mean)});
  }

  report.single_gender = single_gender_comparison(report.per_voice, categories);
  report.quality = quality_report(ssim_pairs, visqol_scores);
  return report;
}

}  // namespace oovkit
