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

#include "oovkit/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include "json.hpp"
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "cli/pipeline_config.h"
#include "oovkit/benchmark.h"
#include "oovkit/category.h"
#include "oovkit/corpus.h"
#include "oovkit/coverage.h"
#include "oovkit/error.h"
#include "oovkit/eval.h"
#include "oovkit/scriptgen.h"
#include "oovkit/selection.h"
#include "oovkit/simd/kernels.h"
#include "oovkit/textcore.h"
#include "str_util.h"

namespace oovkit {

namespace {

namespace fs = std::filesystem;
using cli::PipelineConfig;
using nlohmann::json;

// Missing or contradictory flags that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  PipelineConfig cfg;
  std::string out_path;
  unsigned workers = 0;
  std::ostream* out = nullptr;
  std::shared_ptr<spdlog::logger> log;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed: " + path);
  return ss.str();
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  o.write(data.data(), static_cast<std::streamsize>(data.size()));
  o.close();
  if (!o) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

fs::path sibling(const std::string& out, std::string_view suffix) {
  fs::path p(out);
  p.replace_extension();
  p += std::string(suffix);
  return p;
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

FrequencyTable load_table(const std::string& path) { return parse_table(read_file(path)).table; }

CategoryConfig load_categories(const PipelineConfig& cfg) {
  if (cfg.categories_config.empty()) return CategoryConfig::defaults();
  return CategoryConfig::from_json(read_file(cfg.categories_config));
}

void write_out(Context& ctx, const fs::path& path, std::string_view data) {
  write_file(path, data);
  ctx.log->info("wrote {}", path.string());
}

// --- subcommands ---

void cmd_ingest(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto prov = cli::provenance_for(cfg);
  if (cfg.merge) {
    if (cfg.inputs.empty()) throw UsageError("ingest --merge needs at least one table");
    auto table = load_table(cfg.inputs.front());
    for (std::size_t i = 1; i < cfg.inputs.size(); ++i) {
      table = merge_tables(table, load_table(cfg.inputs[i]));
    }
    write_out(ctx, ctx.out_path, serialize_table(table, prov));
    return;
  }
  std::vector<std::string> files;
  for (const auto& in : cfg.inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::recursive_directory_iterator(in)) {
        if (e.is_regular_file()) found.push_back(e.path().generic_string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(in, ec)) {
      files.push_back(in);
    } else {
      throw Error(ErrorKind::kIo, "no such file or directory: " + in);
    }
  }
  std::vector<std::ifstream> streams;
  streams.reserve(files.size());
  std::vector<NamedStream> sources;
  for (const auto& f : files) {
    streams.emplace_back(f, std::ios::binary);
    if (!streams.back()) throw Error(ErrorKind::kIo, "cannot read " + f);
    sources.push_back(NamedStream{f, &streams.back()});
  }
  IngestOptions opts;
  opts.mode = parse_segmentation_mode(cfg.mode);
  opts.deduplicate_lines = cfg.dedup;
  opts.workers = ctx.workers ? ctx.workers : std::max(1u, std::thread::hardware_concurrency());
  const auto table = ingest_corpus(sources, opts);
  if (table.word_counts.empty()) {
    ctx.log->warn("empty table: {} input file(s) contained no words", files.size());
  }
  const auto s = corpus_stats(table);
  ctx.log->info("{} distinct words, {} tokens, {} distinct bigrams", s.distinct_words,
                s.total_word_tokens, s.distinct_bigrams);
  write_out(ctx, ctx.out_path, serialize_table(table, prov));
}

json stats_json(const StatsSummary& s) {
  return json{{"distinct_words", s.distinct_words},
              {"total_word_tokens", s.total_word_tokens},
              {"distinct_bigrams", s.distinct_bigrams},
              {"total_bigram_occurrences", s.total_bigram_occurrences}};
}

void cmd_coverage(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.train, "--train");
  need(cfg.target, "--target");
  const auto train = load_table(cfg.train);
  const auto target = load_table(cfg.target);
  const auto report = missing_bigram_report(train, target, cfg.min_freq);
  const auto oov = find_oov_candidates(train, target, report);

  // IV side of the benchmark pool: frequent target words fully covered by training
  std::vector<CoverageVerdict> iv;
  for (const auto& [w, n] : target.word_counts) {
    if (n < cfg.min_freq || contains_decimal_digit(w)) continue;
    auto v = classify_word(WordToken{w, classify_script(w)}, train);
    if (v.status == CoverageStatus::kIV) {
      v.target_frequency = n;
      iv.push_back(std::move(v));
    }
  }
  std::stable_sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) {
    return a.target_frequency > b.target_frequency;
  });

  const auto prov = cli::provenance_for(cfg);
  write_out(ctx, ctx.out_path, report_to_json(report, prov));
  write_out(ctx, sibling(ctx.out_path, ".tsv"), report_to_tsv(report));
  std::string lines;
  for (const auto& v : oov) lines += verdict_to_json_line(v) + "\n";
  write_out(ctx, sibling(ctx.out_path, ".candidates.jsonl"), lines);
  lines.clear();
  for (const auto& v : iv) lines += verdict_to_json_line(v) + "\n";
  write_out(ctx, sibling(ctx.out_path, ".iv.jsonl"), lines);

  json stats;
  stats["provenance"] = json::parse(prov);
  stats["train"] = stats_json(corpus_stats(train));
  stats["target"] = stats_json(corpus_stats(target));
  stats["missing_bigrams"] = report.entries.size();
  stats["oov_candidates"] = oov.size();
  stats["iv_candidates"] = iv.size();
  if (!cfg.lang.empty()) {
    std::set<std::string> vowels;
    if (!cfg.vowels_config.empty()) {
      const auto all = parse_vowel_config(read_file(cfg.vowels_config));
      auto it = all.find(cfg.lang);
      if (it == all.end()) {
        throw Error(ErrorKind::kConfig, "no vowel set for '" + cfg.lang + "' in " + cfg.vowels_config);
      }
      vowels = it->second;
    } else {
      vowels = default_vowel_set(cfg.lang);
    }
    const auto tv = count_consecutive_vowel_words(train, vowels);
    const auto gv = count_consecutive_vowel_words(target, vowels);
    stats["consecutive_vowel_words"] = {
        {"train", {{"word_types", tv.word_type_count}, {"occurrences", tv.occurrence_count}}},
        {"target", {{"word_types", gv.word_type_count}, {"occurrences", gv.occurrence_count}}}};
  }
  write_out(ctx, sibling(ctx.out_path, ".stats.json"), stats.dump(2) + "\n");
  ctx.log->info("{} missing bigrams, {} OOV and {} IV candidates", report.entries.size(),
                oov.size(), iv.size());
}

void cmd_select(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.report, "--report");
  need(cfg.candidates_file, "--candidates");
  const auto report = report_from_json(read_file(cfg.report));
  const auto candidates = verdicts_from_jsonl(read_file(cfg.candidates_file));
  SelectionConfig sc;
  sc.k = cfg.k;
  sc.budget = cfg.budget;
  sc.tie_break = parse_tie_break(cfg.tie_break);
  validate(sc);
  const auto result = select_words_greedy(candidates, report, sc);
  const auto m = coverage_of_selection(result, report);
  ctx.log->info("selected {} words; {:.1f}% of missing bigrams credited at least once",
                result.chosen.size(), 100.0 * m.covered_fraction);
  write_out(ctx, ctx.out_path, selection_to_json(result, report, cli::provenance_for(cfg)));
  write_out(ctx, sibling(ctx.out_path, ".words.txt"), selection_word_list(result));
}

void cmd_script(Context& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<std::string> words;
  if (!cfg.selection.empty()) {
    for (const auto& c : selection_from_json(read_file(cfg.selection)).chosen) words.push_back(c.word);
  } else if (!cfg.words.empty()) {
    const auto text = read_file(cfg.words);
    for (auto line : detail::lines_of(text)) {
      line = detail::trim(line);
      if (!line.empty()) words.emplace_back(line);
    }
  } else {
    throw UsageError("script needs --selection or --words");
  }
  ctx.log->info("shuffling {} words with seed {}", words.size(), cfg.seed);
  const auto script = generate_recording_script(words, cfg.group_size, cfg.seed, cfg.lang);
  const auto prov = cli::provenance_for(cfg);
  write_out(ctx, ctx.out_path, render_script(script));
  write_out(ctx, sibling(ctx.out_path, ".json"), script_sidecar_json(script, prov));
  if (!cfg.train.empty()) {
    std::set<std::string> bench_words;
    if (!cfg.benchmark.empty()) {
      for (const auto& e : parse_benchmark(read_file(cfg.benchmark)).entries) bench_words.insert(e.word);
    }
    const auto v = validate_script(script, bench_words, load_table(cfg.train));
    const auto path = sibling(ctx.out_path, ".validation.json");
    write_out(ctx, path, validation_to_json(v));
    if (!v.pass) {
      throw Error(ErrorKind::kValidation, "recording script failed validation, see " + path.string());
    }
  }
}

void cmd_bench_export(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.lang, "--lang");
  if (cfg.candidates.empty()) throw UsageError("missing required option --candidates");
  const auto categories = load_categories(cfg).for_language(cfg.lang);
  std::vector<CoverageVerdict> all;
  for (const auto& path : cfg.candidates) {
    auto v = verdicts_from_jsonl(read_file(path));
    all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  write_out(ctx, ctx.out_path, export_annotation_sheet(all, categories));
  ctx.log->info("exported {} candidate rows", all.size());
}

void cmd_bench_import(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.sheet, "--sheet");
  need(cfg.train, "--train");
  need(cfg.lang, "--lang");
  const auto categories = load_categories(cfg).for_language(cfg.lang);
  const auto result = import_annotations(read_file(cfg.sheet), load_table(cfg.train), categories,
                                         cfg.lang, parse_targets(cfg.targets));
  for (const auto& r : result.rejects) {
    ctx.log->warn("sheet line {} ({}): {}", r.line, r.word, r.reason);
  }
  for (const auto& s : result.quota.shortfalls()) ctx.log->info("short: {}", s);
  ctx.log->info("imported {} entries, rejected {}", result.entries.size(), result.rejects.size());
  write_out(ctx, ctx.out_path, import_result_to_json(result, cli::provenance_for(cfg)));
}

void cmd_gap(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.annotations, "--annotations");
  need(cfg.report, "--report");
  const auto imported = import_result_from_json(read_file(cfg.annotations));
  const auto report = report_from_json(read_file(cfg.report));
  const auto gaps = gap_report(imported.quota, imported.entries, report);
  write_out(ctx, ctx.out_path,
            "#config\t" + cli::provenance_for(cfg) + "\n" + gap_report_to_tsv(gaps));
  ctx.log->info("{} categories under the OOV quota", gaps.size());
}

void cmd_bench_build(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.annotations, "--annotations");
  const auto imported = import_result_from_json(read_file(cfg.annotations));
  auto entries = imported.entries;
  canonicalize_entries(entries, imported.quota.categories);
  const auto quota = compute_quota(entries, imported.quota.categories, imported.quota.language,
                                   imported.quota.targets);
  if (cfg.force && !quota.complete()) {
    ctx.log->warn("building an incomplete benchmark (--force)");
  }
  write_out(ctx, ctx.out_path, build_benchmark(entries, quota, cfg.force, cli::provenance_for(cfg)));
}

void cmd_eval(Context& ctx) {
  const auto& cfg = ctx.cfg;
  need(cfg.ratings, "--ratings");
  if (cfg.embeddings.empty() != cfg.manifest.empty()) {
    throw UsageError("--embeddings and --manifest go together");
  }
  const auto ratings = parse_ratings_csv(read_file(cfg.ratings));
  std::vector<SimilarityPair> pairs;
  if (!cfg.embeddings.empty()) {
    pairs = pair_embeddings(read_file(cfg.embeddings), read_file(cfg.manifest));
  }
  std::vector<QualityScore> scores;
  if (!cfg.quality.empty()) scores = parse_quality_csv(read_file(cfg.quality));
  const auto categories = load_categories(cfg);
  const auto report =
      build_eval_report(ratings, pairs, scores, categories,
                        cfg.majority_vote ? RaterAggregation::kMajorityVote : RaterAggregation::kPooled);
  ctx.log->info("{} ratings, {} embedding pairs, {} quality scores", ratings.size(), pairs.size(),
                scores.size());
  write_out(ctx, ctx.out_path, eval_report_to_json(report, cli::provenance_for(cfg)));
  write_out(ctx, sibling(ctx.out_path, ".txt"), render_report_text(report, categories));
}

void cmd_report(Context& ctx) {
  need(ctx.cfg.eval, "--eval");
  const auto report = eval_report_from_json(read_file(ctx.cfg.eval));
  *ctx.out << render_report_text(report, load_categories(ctx.cfg));
}

void error_line(std::ostream& err, std::string_view kind, std::string_view message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg;
  Context ctx;
  std::string replay;
  bool verbose = false;

  CLI::App app{"oovkit: out-of-vocabulary coverage tooling for TTS benchmarks", "oovkit"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string("oovkit ") + OOVKIT_VERSION);

  auto common = [&](CLI::App* sub, bool with_out = true) {
    if (with_out) sub->add_option("--out", ctx.out_path, "Output path; siblings derive from its stem");
    sub->add_option("--replay", replay, "Re-run with the config embedded in an artifact");
    sub->add_flag("-v,--verbose", verbose, "Debug logging");
  };
  auto lang = [&](CLI::App* sub) { sub->add_option("--lang", cfg.lang, "Language tag (hi, ta, ...)"); };
  auto cats = [&](CLI::App* sub) {
    sub->add_option("--categories", cfg.categories_config, "Category config JSON");
  };

  auto* ingest = app.add_subcommand("ingest", "Build a frequency table from text files or directories");
  ingest->add_option("inputs", cfg.inputs, "Files or directories (tables with --merge)");
  ingest->add_option("--mode", cfg.mode, "codepoint|grapheme")
      ->check(CLI::IsMember({"codepoint", "grapheme", "grapheme_cluster"}));
  ingest->add_flag("--dedup", cfg.dedup, "Drop repeated lines");
  ingest->add_flag("--merge", cfg.merge, "Inputs are tables to merge");
  ingest->add_option("--workers", ctx.workers, "Worker threads (0 = all cores)");
  common(ingest);

  auto* coverage = app.add_subcommand("coverage", "Missing-bigram report and candidate lists");
  coverage->add_option("--train", cfg.train, "Training frequency table");
  coverage->add_option("--target", cfg.target, "Target-domain frequency table");
  coverage->add_option("--min-freq", cfg.min_freq, "Minimum target occurrences")
      ->check(CLI::PositiveNumber);
  coverage->add_option("--vowels", cfg.vowels_config, "Vowel config JSON");
  lang(coverage);
  common(coverage);

  auto* select = app.add_subcommand("select", "Capped greedy word selection");
  select->add_option("--report", cfg.report, "Missing-bigram report JSON");
  select->add_option("--candidates", cfg.candidates_file, "Candidate verdicts (JSONL)");
  select->add_option("--k", cfg.k, "Per-bigram credit cap")->check(CLI::NonNegativeNumber);
  select->add_option("--budget", cfg.budget, "Number of words to pick")->check(CLI::PositiveNumber);
  select->add_option("--tie-break", cfg.tie_break, "lexicographic|frequency");
  common(select);

  auto* script = app.add_subcommand("script", "Shuffle selected words into a recording script");
  script->add_option("--selection", cfg.selection, "Selection JSON");
  script->add_option("--words", cfg.words, "Plain word list, one per line");
  script->add_option("--group-size", cfg.group_size, "Words per utterance")->check(CLI::PositiveNumber);
  script->add_option("--seed", cfg.seed, "Shuffle seed");
  script->add_option("--train", cfg.train, "Training table, enables validation");
  script->add_option("--benchmark", cfg.benchmark, "Benchmark JSON to check for overlap");
  lang(script);
  common(script);

  auto* bexport = app.add_subcommand("bench-export", "Write the annotation sheet");
  bexport->add_option("--candidates", cfg.candidates, "Candidate verdict files (JSONL)");
  lang(bexport);
  cats(bexport);
  common(bexport);

  auto* bimport = app.add_subcommand("bench-import", "Validate an annotated sheet");
  bimport->add_option("--sheet", cfg.sheet, "Annotated sheet (TSV)");
  bimport->add_option("--train", cfg.train, "Training table for re-verification");
  bimport->add_option("--targets", cfg.targets, "Per-category quota: N or IV,OOV");
  lang(bimport);
  cats(bimport);
  common(bimport);

  auto* gap = app.add_subcommand("gap", "Uncovered bigrams for under-quota categories");
  gap->add_option("--annotations", cfg.annotations, "bench-import output");
  gap->add_option("--report", cfg.report, "Missing-bigram report JSON");
  common(gap);

  auto* bbuild = app.add_subcommand("bench-build", "Freeze the benchmark");
  bbuild->add_option("--annotations", cfg.annotations, "bench-import output");
  bbuild->add_flag("--force", cfg.force, "Build even when quotas are short");
  common(bbuild);

  auto* eval = app.add_subcommand("eval", "Aggregate ratings and quality scores");
  eval->add_option("--ratings", cfg.ratings, "Ratings CSV");
  eval->add_option("--embeddings", cfg.embeddings, "Speaker embeddings, one vector per line");
  eval->add_option("--manifest", cfg.manifest, "Embedding manifest CSV");
  eval->add_option("--quality", cfg.quality, "Perceptual quality scores CSV");
  eval->add_flag("--majority-vote", cfg.majority_vote, "One trial per word instead of per rating");
  cats(eval);
  common(eval);

  auto* report = app.add_subcommand("report", "Print the text tables of an eval artifact");
  report->add_option("--eval", cfg.eval, "eval output JSON");
  cats(report);
  common(report, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "oovkit " << OOVKIT_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what());
    err << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  ctx.out = &out;
  ctx.log = std::make_shared<spdlog::logger>(
      "oovkit", std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true));
  ctx.log->set_pattern("[%l] %v");
  ctx.log->set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (!replay.empty()) {
      cfg = cli::config_from_artifact(read_file(replay));
      if (cfg.command != sub->get_name()) {
        throw UsageError("artifact was produced by '" + cfg.command + "', not '" + sub->get_name() + "'");
      }
      ctx.log->info("replaying config from {}", replay);
    }
    cfg.command = sub->get_name();
    ctx.cfg = cfg;
    ctx.log->debug("simd: {}", simd::to_string(simd::active_isa()));
    if (cfg.command != "report") need(ctx.out_path, "--out");

    static const std::map<std::string, void (*)(Context&)> kCommands = {
        {"ingest", cmd_ingest},           {"coverage", cmd_coverage},
        {"select", cmd_select},           {"script", cmd_script},
        {"bench-export", cmd_bench_export}, {"bench-import", cmd_bench_import},
        {"gap", cmd_gap},                 {"bench-build", cmd_bench_build},
        {"eval", cmd_eval},               {"report", cmd_report}};
    kCommands.at(cfg.command)(ctx);
    return 0;
  } catch (const UsageError& e) {
    error_line(err, "usage", e.what());
    err << sub->help();
    return 2;
  } catch (const Error& e) {
    error_line(err, to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_line(err, "internal", e.what());
    return 1;
  }
}

}  // namespace oovkit
