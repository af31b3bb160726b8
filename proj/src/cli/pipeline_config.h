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

#ifndef OOVKIT_SRC_CLI_PIPELINE_CONFIG_H_
#define OOVKIT_SRC_CLI_PIPELINE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace oovkit::cli {

// Everything that influences an artifact's content. Output paths are not
// part of it, so an artifact can be replayed into a different location.
struct PipelineConfig {
  std::string command;
  std::string lang;
  std::string mode = "codepoint";
  std::uint64_t min_freq = 10;
  std::uint32_t k = 6;
  std::uint32_t budget = 2000;
  std::string tie_break = "lexicographic";
  std::uint32_t group_size = 5;
  std::uint64_t seed = 0;
  std::string targets = "50,50";
  bool force = false;
  bool dedup = false;
  bool majority_vote = false;
  bool merge = false;

  std::vector<std::string> inputs;  // positional
  std::string train;
  std::string target;
  std::string report;
  std::string candidates_file;
  std::vector<std::string> candidates;
  std::string selection;
  std::string words;
  std::string sheet;
  std::string annotations;
  std::string benchmark;
  std::string ratings;
  std::string embeddings;
  std::string manifest;
  std::string quality;
  std::string eval;
  std::string categories_config;
  std::string vowels_config;

  nlohmann::json to_json() const;
  static PipelineConfig from_json(const nlohmann::json& j);
};

// {"tool": "oovkit", "version": ..., "config": {...}} as a compact string.
std::string provenance_for(const PipelineConfig& config);

// Pulls the embedded config back out of any artifact this tool writes.
PipelineConfig config_from_artifact(const std::string& text);

}  // namespace oovkit::cli

#endif  // OOVKIT_SRC_CLI_PIPELINE_CONFIG_H_
