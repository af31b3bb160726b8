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

#ifndef OOVKIT_SRC_CSV_H_
#define OOVKIT_SRC_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace oovkit::detail {

// RFC 4180-ish: quoted fields may contain commas, doubled quotes and
// newlines. A trailing newline does not produce an empty record.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace oovkit::detail

#endif  // OOVKIT_SRC_CSV_H_
