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

#include "oovkit/textcore.h"

#include <unicode/brkiter.h>
#include <unicode/bytestream.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/utext.h>

#include <memory>
#include <string>

#include "oovkit/error.h"
#include "oovkit/simd/kernels.h"
#include "utf8.h"

namespace oovkit {

namespace detail {

std::optional<std::size_t> find_invalid_utf8(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    pos += simd::ascii_prefix_length(s.substr(pos));
    if (pos >= s.size()) break;
    char32_t cp;
    const std::size_t len = decode_utf8(s, pos, cp);
    if (len == 0) return pos;
    pos += len;
  }
  return std::nullopt;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace detail

namespace {

using detail::decode_utf8;
using detail::is_joiner;

void check_utf8(std::string_view s) {
  if (auto bad = detail::find_invalid_utf8(s)) {
    throw DecodeError(*bad, "invalid UTF-8 byte sequence at byte offset " +
                                std::to_string(*bad));
  }
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_edge_strippable(char32_t cp) {
  return is_joiner(cp) || u_ispunct(static_cast<UChar32>(cp));
}

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
      throw Error(ErrorKind::kInternal,
                  std::string("cannot load NFC data: ") + u_errorName(status));
    }
    return n;
  }();
  return *instance;
}

// Collapses whitespace runs (including newlines) to one space and trims.
// Input must already be valid UTF-8.
void collapse_whitespace(std::string_view s, std::string& out) {
  out.clear();
  out.reserve(s.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[pos]);
    char32_t cp = b;
    std::size_t len = 1;
    if (b >= 0x80) len = decode_utf8(s, pos, cp);
    if (b == ' ' || (b >= 0x09 && b <= 0x0D) || (b >= 0x80 && is_space(cp))) {
      pending_space = true;
    } else {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.append(s.substr(pos, len));
    }
    pos += len;
  }
}

// Steps back to the start of the scalar that ends at `end`.
std::size_t previous_scalar_start(std::string_view s, std::size_t end) {
  std::size_t start = end - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) {
    --start;
  }
  return start;
}

std::string_view strip_edges(std::string_view word) {
  std::size_t begin = 0;
  while (begin < word.size()) {
    char32_t cp;
    const std::size_t len = decode_utf8(word, begin, cp);
    if (len == 0 || !is_edge_strippable(cp)) break;
    begin += len;
  }
  std::size_t end = word.size();
  while (end > begin) {
    const std::size_t start = previous_scalar_start(word, end);
    char32_t cp;
    if (decode_utf8(word, start, cp) == 0 || !is_edge_strippable(cp)) break;
    end = start;
  }
  return word.substr(begin, end - begin);
}

class GraphemeSegmenter {
 public:
  GraphemeSegmenter() {
    UErrorCode status = U_ZERO_ERROR;
    iter_.reset(icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(),
                                                            status));
    if (U_FAILURE(status)) {
      throw Error(ErrorKind::kInternal, std::string("cannot create grapheme "
                                                    "break iterator: ") +
                                            u_errorName(status));
    }
  }

  std::vector<std::string> split(std::string_view word) {
    std::vector<std::string> units;
    if (word.empty()) return units;
    UErrorCode status = U_ZERO_ERROR;
    UText text = UTEXT_INITIALIZER;
    utext_openUTF8(&text, word.data(), static_cast<int64_t>(word.size()), &status);
    iter_->setText(&text, status);
    if (U_FAILURE(status)) {
      utext_close(&text);
      throw Error(ErrorKind::kInternal,
                  std::string("grapheme segmentation failed: ") + u_errorName(status));
    }
    std::int32_t start = iter_->first();
    for (std::int32_t end = iter_->next(); end != icu::BreakIterator::DONE;
         start = end, end = iter_->next()) {
      units.emplace_back(word.substr(start, end - start));
    }
    utext_close(&text);
    return units;
  }

 private:
  std::unique_ptr<icu::BreakIterator> iter_;
};

}  // namespace

std::string_view to_string(SegmentationMode mode) {
  return mode == SegmentationMode::kCodepoint ? "codepoint" : "grapheme";
}

SegmentationMode parse_segmentation_mode(std::string_view name) {
  if (name == "codepoint") return SegmentationMode::kCodepoint;
  if (name == "grapheme" || name == "grapheme_cluster") {
    return SegmentationMode::kGraphemeCluster;
  }
  throw Error(ErrorKind::kConfig,
              "unknown segmentation mode '" + std::string(name) +
                  "' (expected codepoint or grapheme)");
}

std::string_view to_string(ScriptClass script) {
  switch (script) {
    case ScriptClass::kDevanagari: return "Devanagari";
    case ScriptClass::kTamil: return "Tamil";
    case ScriptClass::kLatin: return "Latin";
    case ScriptClass::kMixed: return "Mixed";
    case ScriptClass::kOther: return "Other";
  }
  return "Other";
}

void normalize_line(std::string_view raw, std::string& out) {
  check_utf8(raw);
  std::string collapsed;
  collapse_whitespace(raw, collapsed);
  if (simd::ascii_prefix_length(collapsed) == collapsed.size()) {
    out = std::move(collapsed);
    return;
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::StringPiece piece(collapsed.data(),
                               static_cast<std::int32_t>(collapsed.size()));
  if (nfc().isNormalizedUTF8(piece, status) && U_SUCCESS(status)) {
    out = std::move(collapsed);
    return;
  }
  status = U_ZERO_ERROR;
  out.clear();
  icu::StringByteSink<std::string> sink(&out);
  nfc().normalizeUTF8(0, piece, sink, nullptr, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kInternal,
                std::string("NFC normalization failed: ") + u_errorName(status));
  }
}

NormalizedText normalize_text(std::string_view raw) {
  check_utf8(raw);
  std::string content;
  content.reserve(raw.size());
  std::string line;
  std::size_t begin = 0;
  while (true) {
    const std::size_t nl = raw.find('\n', begin);
    const std::string_view piece =
        raw.substr(begin, nl == std::string_view::npos ? raw.size() - begin
                                                       : nl - begin);
    normalize_line(piece, line);
    content += line;
    if (nl == std::string_view::npos) break;
    content.push_back('\n');
    begin = nl + 1;
  }
  return NormalizedText(std::move(content));
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t space = line.find(' ', pos);
    const std::size_t end = space == std::string_view::npos ? line.size() : space;
    if (end > pos) {
      const std::string_view word = strip_edges(line.substr(pos, end - pos));
      if (!word.empty()) words.push_back(word);
    }
    pos = end + 1;
  }
  return words;
}

std::vector<WordToken> tokenize_words(const NormalizedText& text) {
  std::vector<WordToken> tokens;
  const std::string_view content = text.content();
  std::size_t begin = 0;
  while (begin <= content.size()) {
    const std::size_t nl = content.find('\n', begin);
    const std::size_t end = nl == std::string_view::npos ? content.size() : nl;
    for (std::string_view w : split_words(content.substr(begin, end - begin))) {
      tokens.push_back(WordToken{std::string(w), classify_script(w)});
    }
    if (nl == std::string_view::npos) break;
    begin = nl + 1;
  }
  return tokens;
}

bool contains_decimal_digit(std::string_view surface) {
  std::size_t pos = 0;
  while (pos < surface.size()) {
    char32_t cp;
    const std::size_t len = decode_utf8(surface, pos, cp);
    if (len == 0) return false;
    if (u_isdigit(static_cast<UChar32>(cp))) return true;
    pos += len;
  }
  return false;
}

ScriptClass classify_script(std::string_view surface) {
  bool digit = false;
  bool seen[3] = {false, false, false};  // Devanagari, Tamil, Latin
  bool other = false;
  std::size_t pos = 0;
  while (pos < surface.size()) {
    char32_t cp;
    const std::size_t len = decode_utf8(surface, pos, cp);
    if (len == 0) return ScriptClass::kOther;
    pos += len;
    const auto c = static_cast<UChar32>(cp);
    if (is_joiner(cp) || u_ispunct(c) || u_isUWhiteSpace(c)) continue;
    if (u_isdigit(c)) {
      digit = true;
      continue;
    }
    UErrorCode status = U_ZERO_ERROR;
    const UScriptCode script = uscript_getScript(c, &status);
    switch (script) {
      case USCRIPT_DEVANAGARI: seen[0] = true; break;
      case USCRIPT_TAMIL: seen[1] = true; break;
      case USCRIPT_LATIN: seen[2] = true; break;
      case USCRIPT_COMMON:
      case USCRIPT_INHERITED: break;
      default: other = true; break;
    }
  }
  if (digit) return ScriptClass::kOther;
  const int classes = int(seen[0]) + int(seen[1]) + int(seen[2]) + int(other);
  if (classes >= 2) return ScriptClass::kMixed;
  if (seen[0]) return ScriptClass::kDevanagari;
  if (seen[1]) return ScriptClass::kTamil;
  if (seen[2]) return ScriptClass::kLatin;
  return ScriptClass::kOther;
}

std::vector<std::string> segment_units(std::string_view word,
                                       SegmentationMode mode) {
  if (mode == SegmentationMode::kGraphemeCluster) {
    thread_local GraphemeSegmenter segmenter;
    return segmenter.split(word);
  }
  std::vector<std::string> units;
  std::string leading_joiners;
  std::size_t pos = 0;
  while (pos < word.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(word, pos, cp);
    if (len == 0) {
      throw DecodeError(pos, "invalid UTF-8 in word at byte offset " +
                                 std::to_string(pos));
    }
    const std::string_view bytes = word.substr(pos, len);
    if (is_joiner(cp)) {
      if (units.empty()) {
        leading_joiners.append(bytes);
      } else {
        units.back().append(bytes);
      }
    } else {
      units.emplace_back(leading_joiners);
      units.back().append(bytes);
      leading_joiners.clear();
    }
    pos += len;
  }
  return units;
}

BigramCounts extract_bigrams(std::string_view word, SegmentationMode mode) {
  BigramCounts counts;
  const std::vector<std::string> units = segment_units(word, mode);
  for (std::size_t i = 0; i + 1 < units.size(); ++i) {
    ++counts[Bigram{units[i], units[i + 1]}];
  }
  return counts;
}

}  // namespace oovkit
