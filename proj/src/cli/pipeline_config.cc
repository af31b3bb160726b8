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

#include "cli/pipeline_config.h"

#include "oovkit/corpus.h"
#include "oovkit/error.h"

namespace oovkit::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    PipelineConfig, command, lang, mode, min_freq, k, budget, tie_break, group_size, seed,
    targets, force, dedup, majority_vote, merge, inputs, train, target, report, candidates_file,
    candidates, selection, words, sheet, annotations, benchmark, ratings, embeddings, manifest,
    quality, eval, categories_config, vowels_config)

nlohmann::json PipelineConfig::to_json() const {
  nlohmann::json j = *this;
  return j;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
  return j.get<PipelineConfig>();
}

std::string provenance_for(const PipelineConfig& config) {
  nlohmann::json j;
  j["tool"] = "oovkit";
  j["version"] = OOVKIT_VERSION;
  j["config"] = config.to_json();
  return j.dump();
}

PipelineConfig config_from_artifact(const std::string& text) {
  std::string prov;
  if (text.starts_with("#oovkit-frequency-table")) {
    prov = parse_table(text).provenance_json;
  } else if (text.starts_with("#config\t")) {
    const auto eol = text.find('\n');
    prov = text.substr(8, eol == std::string::npos ? std::string::npos : eol - 8);
  } else {
    try {
      const auto doc = nlohmann::json::parse(text);
      if (doc.is_object() && doc.contains("provenance")) prov = doc["provenance"].dump();
    } catch (const nlohmann::json::exception&) {
    }
  }
  if (prov.empty() || prov == "null") {
    throw Error(ErrorKind::kFormat, "artifact carries no embedded config");
  }
  try {
    const auto j = nlohmann::json::parse(prov);
    return PipelineConfig::from_json(j.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("bad embedded config: ") + e.what());
  }
}

}  // namespace oovkit::cli
