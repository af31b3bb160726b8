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

// On-disk frequency table:
//
//   #oovkit-frequency-table<TAB>1
//   #tool<TAB>oovkit <version>
//   #mode<TAB>codepoint|grapheme
//   #deduplicated<TAB>true|false
//   #total_word_tokens<TAB><n>
//   #source<TAB><id><TAB><lines>        (zero or more, sorted by id)
//   #config<TAB><json>                  (optional)
//   #section<TAB>words
//   <word><TAB><count>                  (sorted bytewise)
//   #section<TAB>bigrams
//   <first><TAB><second><TAB><count>    (sorted bytewise by first, second)

#include <string>

#include "oovkit/corpus.h"
#include "oovkit/error.h"
#include "str_util.h"

namespace oovkit {

namespace {

constexpr std::string_view kMagic = "#oovkit-frequency-table";
constexpr std::string_view kFormatVersion = "1";

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kFormat,
              "frequency table line " + std::to_string(line_no) + ": " + what);
}

void check_field(std::string_view s, std::string_view what) {
  if (s.find_first_of("\t\n\r") != std::string_view::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + " contains a tab or newline: " + std::string(s));
  }
}

}  // namespace

std::string serialize_table(const FrequencyTable& table,
                            std::string_view provenance_json) {
  std::string out;
  out.reserve(64 + table.word_counts.size() * 24 + table.bigram_counts.size() * 16);
  out.append(kMagic).append("\t").append(kFormatVersion).append("\n");
  out.append("#tool\toovkit ").append(OOVKIT_VERSION).append("\n");
  out.append("#mode\t").append(to_string(table.mode)).append("\n");
  out.append("#deduplicated\t").append(table.deduplicated ? "true" : "false").append("\n");
  out.append("#total_word_tokens\t")
      .append(std::to_string(table.total_word_tokens))
      .append("\n");
  for (const SourceEntry& s : table.source_manifest) {
    check_field(s.id, "source id");
    out.append("#source\t").append(s.id).append("\t")
        .append(std::to_string(s.line_count)).append("\n");
  }
  if (!provenance_json.empty()) {
    check_field(provenance_json, "provenance");
    out.append("#config\t").append(provenance_json).append("\n");
  }
  out.append("#section\twords\n");
  for (const auto& [word, count] : table.word_counts) {
    out.append(word).append("\t").append(std::to_string(count)).append("\n");
  }
  out.append("#section\tbigrams\n");
  for (const auto& [bigram, count] : table.bigram_counts) {
    out.append(bigram.first).append("\t").append(bigram.second).append("\t")
        .append(std::to_string(count)).append("\n");
  }
  return out;
}

ParsedTable parse_table(std::string_view text) {
  ParsedTable parsed;
  FrequencyTable& table = parsed.table;
  const std::vector<std::string_view> lines = detail::lines_of(text);
  if (lines.empty() || lines[0] != std::string(kMagic) + "\t" + std::string(kFormatVersion)) {
    fail(1, "missing or unsupported header (expected " + std::string(kMagic) +
                " version " + std::string(kFormatVersion) + ")");
  }

  enum class Section { kHeader, kWords, kBigrams } section = Section::kHeader;
  bool saw_mode = false;
  bool saw_total = false;
  std::string previous_word;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (line.starts_with("#section\t")) {
      const std::string_view name = line.substr(9);
      if (name == "words" && section == Section::kHeader) {
        section = Section::kWords;
      } else if (name == "bigrams" && section == Section::kWords) {
        section = Section::kBigrams;
      } else {
        fail(line_no, "unexpected section '" + std::string(name) + "'");
      }
      continue;
    }
    const auto fields = detail::split(line, '\t');
    switch (section) {
      case Section::kHeader: {
        if (fields.size() < 2) fail(line_no, "malformed header line");
        const std::string_view key = fields[0];
        if (key == "#tool") {
          // informational
        } else if (key == "#mode" && fields.size() == 2) {
          table.mode = parse_segmentation_mode(fields[1]);
          saw_mode = true;
        } else if (key == "#deduplicated" && fields.size() == 2) {
          if (fields[1] != "true" && fields[1] != "false") {
            fail(line_no, "deduplicated must be true or false");
          }
          table.deduplicated = fields[1] == "true";
        } else if (key == "#total_word_tokens" && fields.size() == 2) {
          auto n = detail::parse_u64(fields[1]);
          if (!n) fail(line_no, "bad total_word_tokens");
          table.total_word_tokens = *n;
          saw_total = true;
        } else if (key == "#source" && fields.size() == 3) {
          auto n = detail::parse_u64(fields[2]);
          if (!n) fail(line_no, "bad source line count");
          if (!table.source_manifest.empty() &&
              table.source_manifest.back().id >= fields[1]) {
            fail(line_no, "source manifest not sorted or has duplicates");
          }
          table.source_manifest.push_back({std::string(fields[1]), *n});
        } else if (key == "#config") {
          parsed.provenance_json = std::string(line.substr(8));
        } else {
          fail(line_no, "unknown header key '" + std::string(key) + "'");
        }
        break;
      }
      case Section::kWords: {
        if (fields.size() != 2 || fields[0].empty()) fail(line_no, "expected word<TAB>count");
        auto n = detail::parse_u64(fields[1]);
        if (!n || *n == 0) fail(line_no, "word count must be a positive integer");
        std::string word(fields[0]);
        if (!previous_word.empty() && word <= previous_word) {
          fail(line_no, "words not in canonical order");
        }
        table.word_counts.emplace_hint(table.word_counts.end(), word, *n);
        previous_word = std::move(word);
        break;
      }
      case Section::kBigrams: {
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
          fail(line_no, "expected first<TAB>second<TAB>count");
        }
        auto n = detail::parse_u64(fields[2]);
        if (!n || *n == 0) fail(line_no, "bigram count must be a positive integer");
        Bigram b{std::string(fields[0]), std::string(fields[1])};
        if (!table.bigram_counts.empty() && !(table.bigram_counts.rbegin()->first < b)) {
          fail(line_no, "bigrams not in canonical order");
        }
        table.bigram_counts.emplace_hint(table.bigram_counts.end(), std::move(b), *n);
        break;
      }
    }
  }
  if (section != Section::kBigrams) fail(lines.size(), "truncated table (missing sections)");
  if (!saw_mode) fail(1, "missing #mode");
  if (!saw_total) fail(1, "missing #total_word_tokens");
  std::uint64_t sum = 0;
  for (const auto& [word, count] : table.word_counts) sum += count;
  if (sum != table.total_word_tokens) {
    fail(1, "word counts sum to " + std::to_string(sum) +
                " but #total_word_tokens is " + std::to_string(table.total_word_tokens));
  }
  return parsed;
}

}  // namespace oovkit
