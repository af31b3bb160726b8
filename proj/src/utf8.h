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

#ifndef OOVKIT_SRC_UTF8_H_
#define OOVKIT_SRC_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace oovkit::detail {

// Strict decode of the scalar starting at s[pos]: rejects overlong forms,
// surrogates and values above U+10FFFF. Returns the sequence length, or 0.
inline std::size_t decode_utf8(std::string_view s, std::size_t pos,
                               char32_t& cp) noexcept {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(s[i]);
  };
  const std::size_t n = s.size();
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  const auto cont = [&](std::size_t i) {
    return i < n && (byte(i) & 0xC0) == 0x80;
  };
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    if (!cont(pos + 1)) return 0;
    cp = (char32_t(b0 & 0x1F) << 6) | (byte(pos + 1) & 0x3F);
    return 2;
  }
  if (b0 >= 0xE0 && b0 <= 0xEF) {
    if (!cont(pos + 1) || !cont(pos + 2)) return 0;
    const unsigned char b1 = byte(pos + 1);
    if (b0 == 0xE0 && b1 < 0xA0) return 0;  // overlong
    if (b0 == 0xED && b1 > 0x9F) return 0;  // surrogate
    cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(b1 & 0x3F) << 6) |
         (byte(pos + 2) & 0x3F);
    return 3;
  }
  if (b0 >= 0xF0 && b0 <= 0xF4) {
    if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) return 0;
    const unsigned char b1 = byte(pos + 1);
    if (b0 == 0xF0 && b1 < 0x90) return 0;
    if (b0 == 0xF4 && b1 > 0x8F) return 0;
    cp = (char32_t(b0 & 0x07) << 18) | (char32_t(b1 & 0x3F) << 12) |
         (char32_t(byte(pos + 2) & 0x3F) << 6) | (byte(pos + 3) & 0x3F);
    return 4;
  }
  return 0;
}

// Offset of the first malformed byte, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

inline bool is_joiner(char32_t cp) { return cp == 0x200C || cp == 0x200D; }

}  // namespace oovkit::detail

#endif  // OOVKIT_SRC_UTF8_H_
