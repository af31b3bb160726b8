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

#include "oovkit/corpus.h"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "oovkit/error.h"

namespace oovkit {

namespace {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using WordMap = std::unordered_map<std::string, std::uint64_t, StringHash,
                                   std::equal_to<>>;

void add_words(std::string_view line, WordMap& words, std::uint64_t& tokens) {
  for (std::string_view w : split_words(line)) {
    auto it = words.find(w);
    if (it == words.end()) {
      words.emplace(std::string(w), 1);
    } else {
      ++it->second;
    }
    ++tokens;
  }
}

BigramCounts expand_bigrams(
    std::span<const std::pair<const std::string, std::uint64_t>* const> words,
    SegmentationMode mode) {
  BigramCounts counts;
  for (const auto* entry : words) {
    const std::vector<std::string> units = segment_units(entry->first, mode);
    for (std::size_t i = 0; i + 1 < units.size(); ++i) {
      counts[Bigram{units[i], units[i + 1]}] += entry->second;
    }
  }
  return counts;
}

void add_counts(BigramCounts& into, const BigramCounts& from) {
  for (const auto& [bigram, count] : from) into[bigram] += count;
}

std::vector<SourceEntry> coalesce(std::vector<SourceEntry> entries) {
  std::map<std::string, std::uint64_t> by_id;
  for (auto& e : entries) by_id[e.id] += e.line_count;
  std::vector<SourceEntry> out;
  out.reserve(by_id.size());
  for (auto& [id, lines] : by_id) out.push_back({id, lines});
  return out;
}

bool is_empty(const FrequencyTable& t) {
  return t.word_counts.empty() && t.source_manifest.empty() &&
         t.total_word_tokens == 0;
}

}  // namespace

std::uint64_t FrequencyTable::word_count(std::string_view word) const {
  auto it = word_counts.find(std::string(word));
  return it == word_counts.end() ? 0 : it->second;
}

std::uint64_t FrequencyTable::bigram_count(const Bigram& bigram) const {
  auto it = bigram_counts.find(bigram);
  return it == bigram_counts.end() ? 0 : it->second;
}

FrequencyTable make_empty_table(SegmentationMode mode) {
  FrequencyTable t;
  t.mode = mode;
  return t;
}

FrequencyTable ingest_corpus(std::span<const NamedStream> sources,
                             const IngestOptions& options) {
  WordMap words;
  std::uint64_t tokens = 0;
  std::vector<SourceEntry> manifest;
  std::unordered_set<std::string, StringHash, std::equal_to<>> seen_lines;

  std::string raw;
  std::string line;
  for (const NamedStream& source : sources) {
    if (source.stream == nullptr) {
      throw Error(ErrorKind::kIo, "source " + source.id + ": no stream");
    }
    std::uint64_t line_no = 0;
    while (std::getline(*source.stream, raw)) {
      ++line_no;
      if (raw.size() > kMaxLineBytes) {
        throw Error(ErrorKind::kFormat,
                    "source " + source.id + " line " + std::to_string(line_no) +
                        ": line exceeds " + std::to_string(kMaxLineBytes) +
                        " bytes");
      }
      try {
        normalize_line(raw, line);
      } catch (const DecodeError& e) {
        throw Error(ErrorKind::kDecode,
                    "source " + source.id + " line " + std::to_string(line_no) +
                        ": invalid UTF-8 at byte offset " +
                        std::to_string(e.offset()));
      }
      if (options.deduplicate_lines) {
        if (seen_lines.contains(line)) continue;
        seen_lines.insert(line);
      }
      add_words(line, words, tokens);
    }
    if (source.stream->bad()) {
      throw Error(ErrorKind::kIo, "source " + source.id + ": read failure");
    }
    manifest.push_back({source.id, line_no});
  }

  FrequencyTable table = make_empty_table(options.mode);
  table.total_word_tokens = tokens;
  table.deduplicated = options.deduplicate_lines;
  table.source_manifest = coalesce(std::move(manifest));

  std::vector<const std::pair<const std::string, std::uint64_t>*> entries;
  entries.reserve(words.size());
  for (const auto& entry : words) entries.push_back(&entry);

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency()
                                          : options.workers;
  workers = std::max(1u, std::min<unsigned>(workers, 64));
  if (workers == 1 || entries.size() < 4096) {
    table.bigram_counts = expand_bigrams(entries, options.mode);
  } else {
    std::vector<BigramCounts> partials(workers);
    std::vector<std::thread> threads;
    const std::size_t chunk = (entries.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(entries.size(), w * chunk);
      const std::size_t end = std::min(entries.size(), begin + chunk);
      threads.emplace_back([&, w, begin, end] {
        partials[w] = expand_bigrams(
            std::span(entries).subspan(begin, end - begin), options.mode);
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partials) add_counts(table.bigram_counts, p);
  }

  for (auto& [word, count] : words) table.word_counts.emplace(word, count);
  return table;
}

FrequencyTable ingest_texts(
    std::span<const std::pair<std::string, std::string>> sources,
    const IngestOptions& options) {
  std::vector<std::istringstream> streams;
  streams.reserve(sources.size());
  std::vector<NamedStream> named;
  for (const auto& [id, text] : sources) {
    streams.emplace_back(text);
    named.push_back({id, &streams.back()});
  }
  return ingest_corpus(named, options);
}

FrequencyTable merge_tables(const FrequencyTable& a, const FrequencyTable& b) {
  if (a.mode != b.mode) {
    throw Error(ErrorKind::kModeMismatch,
                "cannot merge tables built in " + std::string(to_string(a.mode)) +
                    " and " + std::string(to_string(b.mode)) + " mode");
  }
  if (a.deduplicated != b.deduplicated && !is_empty(a) && !is_empty(b)) {
    throw Error(ErrorKind::kConfig,
                "cannot merge a deduplicated table with a non-deduplicated one");
  }
  FrequencyTable out = a;
  out.deduplicated = is_empty(a) ? b.deduplicated : a.deduplicated;
  for (const auto& [word, count] : b.word_counts) out.word_counts[word] += count;
  add_counts(out.bigram_counts, b.bigram_counts);
  out.total_word_tokens += b.total_word_tokens;
  std::vector<SourceEntry> manifest = a.source_manifest;
  manifest.insert(manifest.end(), b.source_manifest.begin(),
                  b.source_manifest.end());
  out.source_manifest = coalesce(std::move(manifest));
  return out;
}

StatsSummary corpus_stats(const FrequencyTable& table) {
  StatsSummary s;
  s.distinct_words = table.word_counts.size();
  s.total_word_tokens = table.total_word_tokens;
  s.distinct_bigrams = table.bigram_counts.size();
  for (const auto& [bigram, count] : table.bigram_counts) {
    s.total_bigram_occurrences += count;
  }
  return s;
}

}  // namespace oovkit
