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

#include "oovkit/benchmark.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "json_util.h"
#include "oovkit/error.h"
#include "str_util.h"

namespace oovkit {

namespace {

using nlohmann::json;

constexpr std::string_view kColumns[] = {"word",     "status", "missing_bigrams",
                                         "target_frequency", "category", "accept",
                                         "notes",    "sentence"};
constexpr std::size_t kMinColumns = 6;  // through "accept"

std::size_t category_position(Category c, std::span<const Category> categories) {
  auto it = std::find(categories.begin(), categories.end(), c);
  if (it == categories.end()) {
    throw Error(ErrorKind::kValidation,
                "category " + std::string(to_string(c)) + " is not configured for this language");
  }
  return static_cast<std::size_t>(it - categories.begin());
}

json entry_to_json(const BenchmarkEntry& e) {
  return {{"id", e.id},
          {"language", e.language},
          {"category", to_string(e.category)},
          {"status", to_string(e.status)},
          {"word", e.word},
          {"sentence", e.sentence},
          {"missing_bigrams", detail::bigrams_to_json(e.missing_bigrams)}};
}

BenchmarkEntry entry_from_json(const json& j) {
  BenchmarkEntry e;
  e.id = j.at("id").get<std::string>();
  e.language = j.at("language").get<std::string>();
  e.category = parse_category(j.at("category").get<std::string>());
  e.status = parse_coverage_status(j.at("status").get<std::string>());
  e.word = j.at("word").get<std::string>();
  e.sentence = j.at("sentence").get<std::string>();
  e.missing_bigrams = detail::bigrams_from_json(j.at("missing_bigrams"));
  return e;
}

json quota_to_json(const QuotaState& q) {
  json cats = json::array();
  json counts = json::object();
  for (Category c : q.categories) {
    cats.push_back(to_string(c));
    const CategoryTally t = q.tally(c);
    counts[std::string(to_string(c))] = {{"IV", t.iv}, {"OOV", t.oov}, {"total", t.iv + t.oov}};
  }
  return {{"language", q.language},
          {"categories", std::move(cats)},
          {"targets", {{"IV", q.targets.iv}, {"OOV", q.targets.oov}}},
          {"counts", std::move(counts)},
          {"complete", q.complete()}};
}

QuotaState quota_from_json(const json& j) {
  QuotaState q;
  q.language = j.at("language").get<std::string>();
  for (const auto& c : j.at("categories")) q.categories.push_back(parse_category(c.get<std::string>()));
  q.targets.iv = j.at("targets").at("IV").get<std::uint32_t>();
  q.targets.oov = j.at("targets").at("OOV").get<std::uint32_t>();
  for (const auto& [code, t] : j.at("counts").items()) {
    CategoryTally tally{t.at("IV").get<std::uint32_t>(), t.at("OOV").get<std::uint32_t>()};
    if (tally.iv + tally.oov > 0) q.counts[parse_category(code)] = tally;
  }
  return q;
}

bool accept_value(std::string_view raw, bool& valid) {
  const std::string v = detail::to_lower_ascii(detail::trim(raw));
  valid = true;
  if (v == "yes" || v == "y" || v == "true" || v == "1" || v == "x") return true;
  if (v.empty() || v == "no" || v == "n" || v == "false" || v == "0") return false;
  valid = false;
  return false;
}

}  // namespace

QuotaTargets parse_targets(std::string_view text) {
  const auto parts = detail::split(detail::trim(text), ',');
  QuotaTargets t;
  auto iv = detail::parse_u64(detail::trim(parts[0]));
  if (parts.size() == 1 && iv) {
    t.iv = t.oov = static_cast<std::uint32_t>(*iv);
    return t;
  }
  if (parts.size() == 2) {
    auto oov = detail::parse_u64(detail::trim(parts[1]));
    if (iv && oov) {
      t.iv = static_cast<std::uint32_t>(*iv);
      t.oov = static_cast<std::uint32_t>(*oov);
      return t;
    }
  }
  throw Error(ErrorKind::kConfig,
              "targets must be 'N' or 'IV,OOV', got '" + std::string(text) + "'");
}

CategoryTally QuotaState::tally(Category c) const {
  auto it = counts.find(c);
  return it == counts.end() ? CategoryTally{} : it->second;
}

bool QuotaState::complete() const {
  for (Category c : categories) {
    const CategoryTally t = tally(c);
    if (t.iv < targets.iv || t.oov < targets.oov) return false;
  }
  return true;
}

std::vector<std::string> QuotaState::shortfalls() const {
  std::vector<std::string> out;
  for (Category c : categories) {
    const CategoryTally t = tally(c);
    std::string s;
    if (t.iv < targets.iv) {
      s += "IV " + std::to_string(t.iv) + "/" + std::to_string(targets.iv);
    }
    if (t.oov < targets.oov) {
      s += (s.empty() ? "" : ", ") + std::string("OOV ") + std::to_string(t.oov) + "/" +
           std::to_string(targets.oov);
    }
    if (!s.empty()) out.push_back(std::string(to_string(c)) + ": " + s);
  }
  return out;
}

std::string export_annotation_sheet(std::span<const CoverageVerdict> candidates,
                                    std::span<const Category> categories) {
  std::string out;
  std::string category_header = "category[";
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (i > 0) category_header += "|";
    category_header += to_string(categories[i]);
  }
  category_header += "]";
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    if (i > 0) out.push_back('\t');
    out.append(kColumns[i] == "category" ? std::string_view(category_header) : kColumns[i]);
  }
  out.push_back('\n');
  for (const CoverageVerdict& v : candidates) {
    out.append(v.word.surface).append("\t");
    out.append(to_string(v.status)).append("\t");
    out.append(detail::bigrams_to_json(v.missing_bigrams).dump()).append("\t");
    out.append(std::to_string(v.target_frequency));
    out.append("\t\t\t\t\n");  // category, accept, notes, sentence
  }
  return out;
}

std::vector<AnnotationRow> parse_annotation_sheet(std::string_view sheet) {
  std::vector<AnnotationRow> rows;
  const auto lines = detail::lines_of(sheet);
  std::size_t i = 0;
  while (i < lines.size() && lines[i].starts_with("#")) ++i;
  if (i == lines.size()) throw Error(ErrorKind::kFormat, "annotation sheet has no header");
  const auto header = detail::split(lines[i], '\t');
  if (header.size() < kMinColumns) {
    throw Error(ErrorKind::kFormat, "annotation sheet header has too few columns");
  }
  for (std::size_t c = 0; c < header.size() && c < std::size(kColumns); ++c) {
    if (!detail::trim(header[c]).starts_with(kColumns[c])) {
      throw Error(ErrorKind::kFormat, "annotation sheet column " + std::to_string(c + 1) +
                                          " should be '" + std::string(kColumns[c]) + "'");
    }
  }
  for (++i; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    const auto fields = detail::split(lines[i], '\t');
    AnnotationRow row;
    row.line = i + 1;
    std::string* cells[] = {&row.word,     &row.status, &row.missing_bigrams,
                            &row.target_frequency, &row.category, &row.accept,
                            &row.notes,    &row.sentence};
    for (std::size_t c = 0; c < fields.size() && c < std::size(cells); ++c) {
      *cells[c] = std::string(fields[c]);
    }
    if (fields.size() > std::size(cells)) {
      row.notes = "\x01too many columns";  // flagged for import
    } else if (fields.size() < 4) {
      row.notes = "\x01too few columns";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ImportResult import_annotations(std::string_view sheet, const FrequencyTable& training,
                                std::span<const Category> categories,
                                const std::string& language, QuotaTargets targets) {
  ImportResult result;
  std::set<std::pair<Category, std::string>> accepted;
  for (const AnnotationRow& row : parse_annotation_sheet(sheet)) {
    const auto reject = [&](std::string reason) {
      result.rejects.push_back({row.line, row.word, std::move(reason)});
    };
    if (row.notes.starts_with("\x01")) {
      reject("malformed row: " + row.notes.substr(1));
      continue;
    }
    bool accept_ok = true;
    const bool accepted_row = accept_value(row.accept, accept_ok);
    if (!accept_ok) {
      reject("malformed row: accept value '" + row.accept + "'");
      continue;
    }
    if (!accepted_row) continue;

    const std::string word(detail::trim(row.word));
    if (word.empty() || word.find(' ') != std::string::npos) {
      reject("malformed row: word must be a single non-empty token");
      continue;
    }
    if (detail::trim(row.category).empty()) {
      reject("missing category");
      continue;
    }
    const auto category = try_parse_category(row.category);
    if (!category) {
      reject("unknown category '" + std::string(detail::trim(row.category)) + "'");
      continue;
    }
    if (std::find(categories.begin(), categories.end(), *category) == categories.end()) {
      reject("category " + std::string(to_string(*category)) + " not used for language " +
             language);
      continue;
    }
    CoverageStatus claimed;
    try {
      claimed = parse_coverage_status(row.status);
    } catch (const Error&) {
      reject("malformed row: status '" + row.status + "'");
      continue;
    }
    if (!row.target_frequency.empty() && !detail::parse_u64(detail::trim(row.target_frequency))) {
      reject("malformed row: target_frequency '" + row.target_frequency + "'");
      continue;
    }
    if (!detail::trim(row.missing_bigrams).empty()) {
      try {
        detail::bigrams_from_json(json::parse(row.missing_bigrams));
      } catch (const std::exception&) {
        reject("malformed row: missing_bigrams is not a bigram list");
        continue;
      }
    }

    const CoverageVerdict verdict =
        classify_word(WordToken{word, classify_script(word)}, training);
    if (verdict.status != claimed) {
      reject("status mismatch: sheet says " + std::string(to_string(claimed)) +
             " but training table gives " + std::string(to_string(verdict.status)));
      continue;
    }
    if (!accepted.insert({*category, word}).second) {
      reject("duplicate word in category " + std::string(to_string(*category)));
      continue;
    }
    BenchmarkEntry entry;
    entry.language = language;
    entry.category = *category;
    entry.status = verdict.status;
    entry.word = word;
    const std::string sentence(detail::trim(row.sentence));
    entry.sentence = sentence.empty() ? word : sentence;
    entry.missing_bigrams = verdict.missing_bigrams;
    result.entries.push_back(std::move(entry));
  }
  canonicalize_entries(result.entries, categories);
  result.quota = compute_quota(result.entries, categories, language, targets);
  return result;
}

QuotaState compute_quota(std::span<const BenchmarkEntry> entries,
                         std::span<const Category> categories, const std::string& language,
                         QuotaTargets targets) {
  QuotaState q;
  q.language = language;
  q.categories.assign(categories.begin(), categories.end());
  q.targets = targets;
  for (const auto& e : entries) {
    auto& t = q.counts[e.category];
    (e.status == CoverageStatus::kIV ? t.iv : t.oov) += 1;
  }
  return q;
}

std::vector<CategoryGap> gap_report(const QuotaState& quota,
                                    std::span<const BenchmarkEntry> entries,
                                    const MissingBigramReport& report) {
  std::vector<CategoryGap> gaps;
  for (Category c : quota.categories) {
    if (!quota.oov_short(c)) continue;
    std::set<Bigram> used;
    for (const auto& e : entries) {
      if (e.category != c || e.status != CoverageStatus::kOOV) continue;
      for (const auto& [b, n] : e.missing_bigrams) used.insert(b);
    }
    CategoryGap gap;
    gap.category = c;
    gap.oov_count = quota.tally(c).oov;
    gap.oov_target = quota.targets.oov;
    for (const auto& entry : report.entries) {
      if (!used.contains(entry.bigram)) gap.uncovered.push_back(entry);
    }
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

std::string gap_report_to_tsv(std::span<const CategoryGap> gaps) {
  std::string out = "category\toov_count\toov_target\tfirst\tsecond\ttarget_occurrences\texample_words\n";
  for (const auto& g : gaps) {
    for (const auto& e : g.uncovered) {
      out.append(to_string(g.category)).append("\t");
      out.append(std::to_string(g.oov_count)).append("\t");
      out.append(std::to_string(g.oov_target)).append("\t");
      out.append(e.bigram.first).append("\t").append(e.bigram.second).append("\t");
      out.append(std::to_string(e.target_occurrences)).append("\t");
      for (std::size_t i = 0; i < e.example_words.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out.append(e.example_words[i]);
      }
      out.push_back('\n');
    }
  }
  return out;
}

void canonicalize_entries(std::vector<BenchmarkEntry>& entries,
                          std::span<const Category> categories) {
  std::sort(entries.begin(), entries.end(),
            [&](const BenchmarkEntry& a, const BenchmarkEntry& b) {
              const std::size_t ca = category_position(a.category, categories);
              const std::size_t cb = category_position(b.category, categories);
              if (ca != cb) return ca < cb;
              if (a.status != b.status) return a.status == CoverageStatus::kIV;
              return a.word < b.word;
            });
  std::map<std::pair<Category, CoverageStatus>, std::uint32_t> next;
  for (auto& e : entries) {
    const std::uint32_t n = ++next[{e.category, e.status}];
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03u", n);
    e.id = e.language + "-" + std::string(to_string(e.category)) + "-" +
           std::string(to_string(e.status)) + "-" + buf;
  }
}

std::string build_benchmark(std::span<const BenchmarkEntry> entries, const QuotaState& quota,
                            bool force, std::string_view provenance_json) {
  const QuotaState recount =
      compute_quota(entries, quota.categories, quota.language, quota.targets);
  if (!recount.complete() && !force) {
    std::string msg = "benchmark quota incomplete:";
    for (const auto& s : recount.shortfalls()) msg += " [" + s + "]";
    throw Error(ErrorKind::kValidation, msg);
  }
  std::vector<BenchmarkEntry> sorted(entries.begin(), entries.end());
  canonicalize_entries(sorted, quota.categories);

  json doc;
  doc["format"] = "oovkit-benchmark";
  doc["version"] = 1;
  json header = quota_to_json(recount);
  header["total_entries"] = sorted.size();
  header["forced"] = force && !recount.complete();
  doc["header"] = std::move(header);
  json list = json::array();
  for (const auto& e : sorted) list.push_back(entry_to_json(e));
  doc["entries"] = std::move(list);
  if (!provenance_json.empty()) doc["provenance"] = detail::parse_provenance(provenance_json);
  return doc.dump(2) + "\n";
}

Benchmark parse_benchmark(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "oovkit-benchmark") {
      throw Error(ErrorKind::kFormat, "not a benchmark file");
    }
    Benchmark b;
    b.quota = quota_from_json(doc.at("header"));
    b.forced = doc.at("header").value("forced", false);
    std::set<std::string> ids;
    for (const auto& e : doc.at("entries")) {
      b.entries.push_back(entry_from_json(e));
      if (!ids.insert(b.entries.back().id).second) {
        throw Error(ErrorKind::kFormat, "duplicate benchmark id " + b.entries.back().id);
      }
    }
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("benchmark: ") + e.what());
  }
}

std::string import_result_to_json(const ImportResult& result, std::string_view provenance_json) {
  json doc;
  doc["format"] = "oovkit-annotations";
  doc["version"] = 1;
  doc["quota"] = quota_to_json(result.quota);
  doc["shortfalls"] = result.quota.shortfalls();
  json entries = json::array();
  for (const auto& e : result.entries) entries.push_back(entry_to_json(e));
  doc["entries"] = std::move(entries);
  json rejects = json::array();
  for (const auto& r : result.rejects) {
    rejects.push_back({{"line", r.line}, {"word", r.word}, {"reason", r.reason}});
  }
  doc["rejects"] = std::move(rejects);
  if (!provenance_json.empty()) doc["provenance"] = detail::parse_provenance(provenance_json);
  return doc.dump(2) + "\n";
}

ImportResult import_result_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "oovkit-annotations") {
      throw Error(ErrorKind::kFormat, "not an annotation import file");
    }
    ImportResult r;
    r.quota = quota_from_json(doc.at("quota"));
    for (const auto& e : doc.at("entries")) r.entries.push_back(entry_from_json(e));
    for (const auto& j : doc.at("rejects")) {
      r.rejects.push_back({j.at("line").get<std::size_t>(), j.at("word").get<std::string>(),
                           j.at("reason").get<std::string>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("annotation import: ") + e.what());
  }
}

}  // namespace oovkit
