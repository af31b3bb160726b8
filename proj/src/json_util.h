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

#ifndef OOVKIT_SRC_JSON_UTIL_H_
#define OOVKIT_SRC_JSON_UTIL_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "oovkit/error.h"
#include "oovkit/textcore.h"

namespace oovkit::detail {

// [[first, second, count], ...]
inline nlohmann::json bigrams_to_json(const BigramCounts& counts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [b, n] : counts) {
    arr.push_back(nlohmann::json::array({b.first, b.second, n}));
  }
  return arr;
}

inline BigramCounts bigrams_from_json(const nlohmann::json& arr) {
  BigramCounts counts;
  for (const nlohmann::json& item : arr) {
    if (!item.is_array() || item.size() != 3) {
      throw Error(ErrorKind::kFormat, "bigram entry must be [first, second, count]");
    }
    const auto n = item[2].get<std::uint64_t>();
    if (n == 0) throw Error(ErrorKind::kFormat, "bigram count must be positive");
    counts[Bigram{item[0].get<std::string>(), item[1].get<std::string>()}] += n;
  }
  return counts;
}

inline nlohmann::json parse_provenance(std::string_view provenance_json) {
  if (provenance_json.empty()) return nullptr;
  return nlohmann::json::parse(provenance_json);
}

}  // namespace oovkit::detail

#endif  // OOVKIT_SRC_JSON_UTIL_H_
