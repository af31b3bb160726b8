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

#include "oovkit/category.h"

#include "json.hpp"
#include "oovkit/error.h"
#include "str_util.h"

namespace oovkit {

namespace {

constexpr std::pair<Category, std::string_view> kCodes[] = {
    {Category::kAbbr, "Abbr"}, {Category::kBrand, "Brand"}, {Category::kCM, "CM"},
    {Category::kCmpy, "Cmpy"}, {Category::kGovt, "Govt"},   {Category::kProp, "Prop"},
    {Category::kNav, "Nav"},   {Category::kEdu, "Edu"},     {Category::kHealth, "Health"},
};

}  // namespace

std::string_view to_string(Category category) {
  for (const auto& [c, code] : kCodes) {
    if (c == category) return code;
  }
  return "?";
}

std::optional<Category> try_parse_category(std::string_view code) {
  const std::string lower = detail::to_lower_ascii(detail::trim(code));
  for (const auto& [c, name] : kCodes) {
    if (detail::to_lower_ascii(name) == lower) return c;
  }
  return std::nullopt;
}

Category parse_category(std::string_view code) {
  if (auto c = try_parse_category(code)) return *c;
  throw Error(ErrorKind::kFormat, "unknown category code '" + std::string(code) + "'");
}

std::string CategoryConfig::canonical_language(std::string_view language) {
  const std::string lower = detail::to_lower_ascii(detail::trim(language));
  if (lower == "hindi" || lower == "hin") return "hi";
  if (lower == "tamil" || lower == "tam") return "ta";
  return lower;
}

CategoryConfig CategoryConfig::defaults() {
  CategoryConfig config;
  using C = Category;
  config.by_language_["hi"] = {C::kAbbr, C::kBrand, C::kCM, C::kCmpy, C::kGovt, C::kProp, C::kNav};
  config.by_language_["ta"] = {C::kAbbr, C::kBrand, C::kCM, C::kEdu, C::kHealth, C::kProp, C::kNav};
  return config;
}

CategoryConfig CategoryConfig::from_json(std::string_view text) {
  CategoryConfig config = defaults();
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    for (const auto& [lang, list] : doc.items()) {
      std::vector<Category> cats;
      for (const auto& code : list) cats.push_back(parse_category(code.get<std::string>()));
      if (cats.empty()) throw Error(ErrorKind::kConfig, "empty category list for " + lang);
      config.by_language_[canonical_language(lang)] = std::move(cats);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("category config: ") + e.what());
  }
  return config;
}

const std::vector<Category>& CategoryConfig::for_language(std::string_view language) const {
  auto it = by_language_.find(canonical_language(language));
  if (it == by_language_.end()) {
    throw Error(ErrorKind::kConfig,
                "no category set configured for language '" + std::string(language) + "'");
  }
  return it->second;
}

bool CategoryConfig::has_language(std::string_view language) const {
  return by_language_.contains(canonical_language(language));
}

}  // namespace oovkit
