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

#ifndef OOVKIT_TEXTCORE_H_
#define OOVKIT_TEXTCORE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace oovkit {

// What a "character" is when forming bigrams.
//   kCodepoint: one Unicode scalar value; ZWJ/ZWNJ attach to the unit before
//               them and never stand alone.
//   kGraphemeCluster: one extended grapheme cluster (UAX #29, as implemented
//               by the linked ICU).
enum class SegmentationMode { kCodepoint, kGraphemeCluster };

std::string_view to_string(SegmentationMode mode);
// Accepts "codepoint" and "grapheme" (or "grapheme_cluster").
SegmentationMode parse_segmentation_mode(std::string_view name);

enum class ScriptClass { kDevanagari, kTamil, kLatin, kMixed, kOther };

std::string_view to_string(ScriptClass script);

// NFC-composed text. Lines are separated by '\n'; every line is trimmed and
// has its internal whitespace runs collapsed to a single U+0020.
class NormalizedText {
 public:
  NormalizedText() = default;

  const std::string& content() const noexcept { return content_; }

 private:
  friend NormalizedText normalize_text(std::string_view raw);
  explicit NormalizedText(std::string content) : content_(std::move(content)) {}

  std::string content_;
};

struct WordToken {
  std::string surface;
  ScriptClass script_class = ScriptClass::kOther;

  bool operator==(const WordToken&) const = default;
};

struct Bigram {
  std::string first;
  std::string second;

  auto operator<=>(const Bigram&) const = default;
};

// Bigram multiset. Entries are never zero.
using BigramCounts = std::map<Bigram, std::uint64_t>;

// Throws DecodeError (with the byte offset) on malformed UTF-8.
NormalizedText normalize_text(std::string_view raw);

// Normalizes one line into `out` (replacing its contents). Embedded newlines
// are treated as whitespace. Throws DecodeError.
void normalize_line(std::string_view raw, std::string& out);

std::vector<WordToken> tokenize_words(const NormalizedText& text);

// Word surfaces of one normalized line, as views into `line`. Same splitting
// and edge stripping as tokenize_words, without script classification.
std::vector<std::string_view> split_words(std::string_view line);

// Script class of a word: digits force kOther; punctuation, joiners, marks
// and other script-neutral characters are ignored.
ScriptClass classify_script(std::string_view surface);

bool contains_decimal_digit(std::string_view surface);

// Character units of `word` under `mode`.
std::vector<std::string> segment_units(std::string_view word,
                                       SegmentationMode mode);

BigramCounts extract_bigrams(std::string_view word, SegmentationMode mode);

inline BigramCounts extract_bigrams(const WordToken& word,
                                    SegmentationMode mode) {
  return extract_bigrams(word.surface, mode);
}

}  // namespace oovkit

#endif  // OOVKIT_TEXTCORE_H_
