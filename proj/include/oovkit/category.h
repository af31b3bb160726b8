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

#ifndef OOVKIT_CATEGORY_H_
#define OOVKIT_CATEGORY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oovkit {

// Application categories used to stratify the benchmark.
enum class Category { kAbbr, kBrand, kCM, kCmpy, kGovt, kProp, kNav, kEdu, kHealth };

std::string_view to_string(Category category);
std::optional<Category> try_parse_category(std::string_view code);
// Throws Error(kFormat) for an unknown code.
Category parse_category(std::string_view code);

// Ordered category list per language tag. The defaults cover Hindi
// ("hi"/"hindi") and Tamil ("ta"/"tamil"); Tamil swaps Cmpy and Govt for
// Edu and Health in the same column positions.
class CategoryConfig {
 public:
  static CategoryConfig defaults();
  // JSON object {"hi": ["Abbr", ...], ...}; entries override the defaults.
  static CategoryConfig from_json(std::string_view json);

  // Throws Error(kConfig) for a language with no entry.
  const std::vector<Category>& for_language(std::string_view language) const;
  bool has_language(std::string_view language) const;

 private:
  static std::string canonical_language(std::string_view language);
  std::map<std::string, std::vector<Category>> by_language_;
};

}  // namespace oovkit

#endif  // OOVKIT_CATEGORY_H_
