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

#include "oovkit/error.h"

namespace oovkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDecode: return "decode";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kModeMismatch: return "mode_mismatch";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace oovkit
