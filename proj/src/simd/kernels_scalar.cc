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

#include <algorithm>

#include "oovkit/simd/kernels.h"

namespace oovkit::simd::scalar {

DotNorms dot_norms(std::span<const double> a, std::span<const double> b) {
  DotNorms out;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    out.dot += a[i] * b[i];
    out.norm_a_sq += a[i] * a[i];
    out.norm_b_sq += b[i] * b[i];
  }
  return out;
}

std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining) {
  std::uint64_t gain = 0;
  const std::size_t n = std::min(ids.size(), occurrences.size());
  for (std::size_t i = 0; i < n; ++i) {
    gain += std::min(occurrences[i], remaining[ids[i]]);
  }
  return gain;
}

std::size_t ascii_prefix_length(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && static_cast<unsigned char>(bytes[i]) < 0x80) ++i;
  return i;
}

}  // namespace oovkit::simd::scalar
