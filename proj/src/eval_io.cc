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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

#include "csv.h"
#include "json_util.h"
#include "oovkit/error.h"
#include "oovkit/eval.h"
#include "str_util.h"

namespace oovkit {

namespace {

using nlohmann::json;

const std::vector<std::string> kRatingColumns = {
    "sample_id", "language", "system", "train_condition", "test_condition",
    "voice", "category", "word", "rater_id", "intelligible"};

[[noreturn]] void fail_at(const char* what, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::kFormat, std::string(what) + " line " + std::to_string(line) + ": " + msg);
}

void expect_header(const char* what, const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& columns) {
  if (rows.empty()) throw Error(ErrorKind::kFormat, std::string(what) + ": missing header");
  std::vector<std::string> got;
  for (const auto& c : rows[0]) got.emplace_back(detail::trim(c));
  if (got != columns) {
    std::string want;
    for (const auto& c : columns) want += (want.empty() ? "" : ",") + c;
    throw Error(ErrorKind::kFormat, std::string(what) + ": header must be " + want);
  }
}

double parse_real(std::string_view s, bool* ok) {
  s = detail::trim(s);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  *ok = ec == std::errc() && p == s.data() + s.size() && !s.empty() && std::isfinite(v);
  return v;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json cell_json(const CellKey& k, const IerCell& c) {
  return json{{"language", k.language},
              {"system", to_string(k.system)},
              {"train", to_string(k.train)},
              {"test", to_string(k.test)},
              {"category", to_string(k.category)},
              {"voice", k.voice ? json(to_string(*k.voice)) : json(nullptr)},
              {"unintelligible", c.unintelligible},
              {"total", c.total},
              {"rate", c.rate},
              {"voice_averaged", c.voice_averaged}};
}

IERTable table_from(const json& arr) {
  IERTable t;
  for (const auto& j : arr) {
    CellKey k{j.at("language").get<std::string>(),
              parse_system(j.at("system").get<std::string>()),
              parse_train_condition(j.at("train").get<std::string>()),
              parse_test_condition(j.at("test").get<std::string>()),
              parse_category(j.at("category").get<std::string>()),
              j.at("voice").is_null()
                  ? std::nullopt
                  : std::optional<Voice>(parse_voice(j.at("voice").get<std::string>()))};
    IerCell c{j.at("unintelligible").get<std::uint64_t>(), j.at("total").get<std::uint64_t>(),
              j.at("rate").get<double>(), j.at("voice_averaged").get<bool>()};
    if (!t.cells.emplace(std::move(k), c).second) {
      throw Error(ErrorKind::kFormat, "eval report: duplicate IER cell");
    }
  }
  return t;
}

// Two-decimal rendering; "-" for an absent value.
std::string num(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

void emit_table(std::string& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line.append(width[i] - r[i].size() + 2, ' ');
    }
    out += line;
    out += '\n';
  }
}

}  // namespace

std::vector<RatingRecord> parse_ratings_csv(std::string_view text) {
  const auto rows = detail::parse_csv(text);
  expect_header("ratings", rows, kRatingColumns);
  std::vector<RatingRecord> out;
  out.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != kRatingColumns.size()) {
      fail_at("ratings", i + 1, "expected 10 columns, got " + std::to_string(r.size()));
    }
    try {
      RatingRecord rec;
      rec.sample_id = r[0];
      rec.language = std::string(detail::trim(r[1]));
      rec.system = parse_system(r[2]);
      rec.train_condition = parse_train_condition(r[3]);
      rec.test_condition = parse_test_condition(r[4]);
      rec.voice = parse_voice(r[5]);
      rec.category = parse_category(detail::trim(r[6]));
      rec.word = r[7];
      rec.rater_id = r[8];
      const auto v = detail::to_lower_ascii(detail::trim(r[9]));
      if (v == "1" || v == "true") {
        rec.intelligible = true;
      } else if (v == "0" || v == "false") {
        rec.intelligible = false;
      } else {
        throw Error(ErrorKind::kFormat, "intelligible must be 0 or 1, got '" + r[9] + "'");
      }
      if (rec.language.empty()) throw Error(ErrorKind::kFormat, "empty language");
      out.push_back(std::move(rec));
    } catch (const Error& e) {
      fail_at("ratings", i + 1, e.what());
    }
  }
  return out;
}

std::string ratings_to_csv(std::span<const RatingRecord> ratings) {
  std::string out;
  for (std::size_t i = 0; i < kRatingColumns.size(); ++i) {
    out += (i ? "," : "") + kRatingColumns[i];
  }
  out += '\n';
  for (const auto& r : ratings) {
    out += detail::csv_escape(r.sample_id) + ',' + detail::csv_escape(r.language) + ',' +
           std::string(to_string(r.system)) + ',' + std::string(to_string(r.train_condition)) + ',' +
           std::string(to_string(r.test_condition)) + ',' + std::string(to_string(r.voice)) + ',' +
           std::string(to_string(r.category)) + ',' + detail::csv_escape(r.word) + ',' +
           detail::csv_escape(r.rater_id) + ',' + (r.intelligible ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<std::vector<double>> parse_embeddings(std::string_view text) {
  std::vector<std::vector<double>> out;
  std::size_t line_no = 0;
  for (auto line : detail::lines_of(text)) {
    ++line_no;
    if (detail::trim(line).empty()) fail_at("embeddings", line_no, "empty line");
    std::vector<double> v;
    for (auto field : detail::split(line, ',')) {
      bool ok = false;
      const double x = parse_real(field, &ok);
      if (!ok) fail_at("embeddings", line_no, "bad value '" + std::string(field) + "'");
      v.push_back(x);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SimilarityPair> pair_embeddings(std::string_view embeddings_text,
                                            std::string_view manifest_csv) {
  const auto vectors = parse_embeddings(embeddings_text);
  const auto rows = detail::parse_csv(manifest_csv);
  expect_header("embedding manifest", rows, {"source_id", "pair_id", "role", "cell"});
  if (rows.size() - 1 != vectors.size()) {
    throw Error(ErrorKind::kFormat, "embedding manifest has " + std::to_string(rows.size() - 1) +
                                        " rows but there are " + std::to_string(vectors.size()) +
                                        " embeddings");
  }
  struct Partial {
    std::optional<QualityKey> key;
    std::optional<EmbeddingVector> ref, syn;
  };
  std::vector<std::string> order;
  std::map<std::string, Partial> pairs;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) fail_at("embedding manifest", i + 1, "expected 4 columns");
    const std::string pair_id(detail::trim(r[1]));
    const auto role = detail::to_lower_ascii(detail::trim(r[2]));
    QualityKey key;
    try {
      key = parse_quality_key(r[3]);
    } catch (const Error& e) {
      fail_at("embedding manifest", i + 1, e.what());
    }
    auto [it, fresh] = pairs.try_emplace(pair_id);
    if (fresh) order.push_back(pair_id);
    auto& p = it->second;
    if (p.key && *p.key != key) {
      fail_at("embedding manifest", i + 1, "pair " + pair_id + " spans two cells");
    }
    p.key = key;
    EmbeddingVector ev{vectors[i - 1], r[0]};
    if (role == "reference" || role == "ref") {
      if (p.ref) fail_at("embedding manifest", i + 1, "pair " + pair_id + " has two references");
      p.ref = std::move(ev);
    } else if (role == "synthesized" || role == "synth" || role == "synthesised") {
      if (p.syn) fail_at("embedding manifest", i + 1, "pair " + pair_id + " has two syntheses");
      p.syn = std::move(ev);
    } else {
      fail_at("embedding manifest", i + 1, "role must be reference or synthesized");
    }
  }
  std::vector<SimilarityPair> out;
  for (const auto& id : order) {
    auto& p = pairs[id];
    if (!p.ref || !p.syn) {
      throw Error(ErrorKind::kFormat, "embedding pair " + id + " is incomplete");
    }
    out.push_back(SimilarityPair{*p.key, std::move(*p.ref), std::move(*p.syn)});
  }
  return out;
}

std::vector<QualityScore> parse_quality_csv(std::string_view text) {
  const auto rows = detail::parse_csv(text);
  expect_header("quality scores", rows, {"cell", "score"});
  std::vector<QualityScore> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 2) fail_at("quality scores", i + 1, "expected 2 columns");
    bool ok = false;
    const double s = parse_real(r[1], &ok);
    if (!ok) fail_at("quality scores", i + 1, "bad score '" + r[1] + "'");
    try {
      out.push_back(QualityScore{parse_quality_key(r[0]), s});
    } catch (const Error& e) {
      fail_at("quality scores", i + 1, e.what());
    }
  }
  return out;
}

std::string eval_report_to_json(const EvalReport& report, std::string_view provenance_json) {
  json j;
  j["format"] = "oovkit-eval";
  j["version"] = 1;
  j["provenance"] = detail::parse_provenance(provenance_json);
  json pv = json::array(), va = json::array();
  for (const auto& [k, c] : report.per_voice.cells) pv.push_back(cell_json(k, c));
  for (const auto& [k, c] : report.voice_averaged.cells) va.push_back(cell_json(k, c));
  j["ier_per_voice"] = std::move(pv);
  j["ier"] = std::move(va);
  json avg = json::array();
  for (const auto& r : report.category_averages) {
    avg.push_back({{"language", r.language},
                   {"system", to_string(r.system)},
                   {"train", to_string(r.train)},
                   {"test", to_string(r.test)},
                   {"mean", r.mean}});
  }
  j["category_averages"] = std::move(avg);
  json red = json::array();
  for (const auto& r : report.reductions) {
    red.push_back({{"language", r.language},
                   {"system", to_string(r.system)},
                   {"base", r.base},
                   {"improved", r.improved},
                   {"reduction_percent", opt(r.reduction_percent)}});
  }
  j["reductions"] = std::move(red);
  json sg = json::array();
  for (const auto& r : report.single_gender) {
    json cells = json::array();
    for (const auto& [k, v] : r.cells) {
      cells.push_back({{"train", to_string(k.first)}, {"voice", to_string(k.second)}, {"value", opt(v)}});
    }
    sg.push_back({{"language", r.language}, {"cells", std::move(cells)}});
  }
  j["single_gender"] = std::move(sg);
  json q = json::array();
  for (const auto& r : report.quality) {
    q.push_back({{"language", r.language},
                 {"model", r.model},
                 {"voice", r.voice},
                 {"ssim_base", opt(r.ssim_base)},
                 {"ssim_finetuned", opt(r.ssim_finetuned)},
                 {"visqol_base", opt(r.visqol_base)},
                 {"visqol_finetuned", opt(r.visqol_finetuned)}});
  }
  j["quality"] = std::move(q);
  return j.dump(2) + "\n";
}

EvalReport eval_report_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    if (j.value("format", "") != "oovkit-eval") {
      throw Error(ErrorKind::kFormat, "not an eval report (format != oovkit-eval)");
    }
    EvalReport r;
    r.per_voice = table_from(j.at("ier_per_voice"));
    r.voice_averaged = table_from(j.at("ier"));
    for (const auto& a : j.at("category_averages")) {
      r.category_averages.push_back(CategoryAverageRow{
          a.at("language").get<std::string>(), parse_system(a.at("system").get<std::string>()),
          parse_train_condition(a.at("train").get<std::string>()),
          parse_test_condition(a.at("test").get<std::string>()), a.at("mean").get<double>()});
    }
    for (const auto& a : j.at("reductions")) {
      r.reductions.push_back(ReductionRow{a.at("language").get<std::string>(),
                                          parse_system(a.at("system").get<std::string>()),
                                          a.at("base").get<double>(), a.at("improved").get<double>(),
                                          opt_from(a.at("reduction_percent"))});
    }
    for (const auto& a : j.at("single_gender")) {
      SingleGenderRow row;
      row.language = a.at("language").get<std::string>();
      for (const auto& c : a.at("cells")) {
        row.cells[{parse_train_condition(c.at("train").get<std::string>()),
                   parse_voice(c.at("voice").get<std::string>())}] = opt_from(c.at("value"));
      }
      r.single_gender.push_back(std::move(row));
    }
    for (const auto& a : j.at("quality")) {
      r.quality.push_back(QualityRow{a.at("language").get<std::string>(),
                                     a.at("model").get<std::string>(),
                                     a.at("voice").get<std::string>(), opt_from(a.at("ssim_base")),
                                     opt_from(a.at("ssim_finetuned")), opt_from(a.at("visqol_base")),
                                     opt_from(a.at("visqol_finetuned"))});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("eval report: ") + e.what());
  }
}

std::string render_report_text(const EvalReport& report, const CategoryConfig& categories) {
  std::string out;
  const auto& va = report.voice_averaged;

  // per-category table; column i holds the i-th configured category of each language
  std::vector<std::string> languages;
  for (const auto& [k, c] : va.cells) {
    if (std::find(languages.begin(), languages.end(), k.language) == languages.end()) {
      languages.push_back(k.language);
    }
  }
  std::map<std::string, std::vector<Category>> cats;
  std::size_t slots = 0;
  for (const auto& l : languages) {
    cats[l] = categories_for(va, l, categories);
    slots = std::max(slots, cats[l].size());
  }
  std::vector<std::string> header = {"Lang", "Sys", "Train", "Test"};
  for (std::size_t s = 0; s < slots; ++s) {
    std::vector<std::string> names;
    for (const auto& l : languages) {
      if (s >= cats[l].size()) continue;
      std::string n(to_string(cats[l][s]));
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    }
    std::string h;
    for (const auto& n : names) h += (h.empty() ? "" : "/") + n;
    header.push_back(h);
  }
  std::vector<std::vector<std::string>> rows = {header};
  std::set<std::tuple<std::string, TtsSystem, TrainCondition, TestCondition>> groups;
  for (const auto& [k, c] : va.cells) groups.insert({k.language, k.system, k.train, k.test});
  for (const auto& [lang, sys, train, test] : groups) {
    std::vector<std::string> row = {lang, std::string(to_string(sys)), std::string(to_string(train)),
                                    std::string(to_string(test))};
    for (std::size_t s = 0; s < slots; ++s) {
      std::optional<double> v;
      if (s < cats[lang].size()) {
        if (const auto* c = va.find(CellKey{lang, sys, train, test, cats[lang][s], std::nullopt})) {
          v = c->rate;
        }
      }
      row.push_back(num(v));
    }
    rows.push_back(std::move(row));
  }
  out += "== Intelligibility error rate by category (voice-averaged) ==\n";
  emit_table(out, rows);

  out += "\n== Category-averaged intelligibility error rate ==\n";
  rows = {{"Lang", "Sys", "Train", "Test", "Mean"}};
  for (const auto& r : report.category_averages) {
    rows.push_back({r.language, std::string(to_string(r.system)), std::string(to_string(r.train)),
                    std::string(to_string(r.test)), num(r.mean)});
  }
  emit_table(out, rows);

  out += "\n== Relative OOV error reduction (I -> I+O) ==\n";
  rows = {{"Lang", "Sys", "I", "I+O", "Reduction%"}};
  for (const auto& r : report.reductions) {
    rows.push_back({r.language, std::string(to_string(r.system)), num(r.base), num(r.improved),
                    num(r.reduction_percent)});
  }
  emit_table(out, rows);

  out += "\n== Single-gender fine-tuning (FP, OOV) ==\n";
  rows = {{"Lang", "I:F", "I:M", "I+M1M2:F", "I+M1M2:M", "I+F1:F", "I+F1:M"}};
  for (const auto& r : report.single_gender) {
    std::vector<std::string> row = {r.language};
    for (auto cond : {TrainCondition::kI, TrainCondition::kIM1M2, TrainCondition::kIF1}) {
      for (auto voice : {Voice::kFemale, Voice::kMale}) {
        auto it = r.cells.find({cond, voice});
        row.push_back(num(it == r.cells.end() ? std::nullopt : it->second));
      }
    }
    rows.push_back(std::move(row));
  }
  emit_table(out, rows);

  out += "\n== Speaker similarity and quality ==\n";
  rows = {{"Lang", "Model", "Voice", "S-SIM:Base", "S-SIM:I+O", "VISQOL:Base", "VISQOL:I+O"}};
  for (const auto& r : report.quality) {
    rows.push_back({r.language, r.model, r.voice, num(r.ssim_base), num(r.ssim_finetuned),
                    num(r.visqol_base), num(r.visqol_finetuned)});
  }
  emit_table(out, rows);
  return out;
}

}  // namespace oovkit
