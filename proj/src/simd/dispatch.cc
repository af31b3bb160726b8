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

#include <cstdlib>
#include <string>

#include "oovkit/simd/kernels.h"

namespace oovkit::simd {

namespace {

struct KernelTable {
  Isa isa;
  DotNorms (*dot_norms)(std::span<const double>, std::span<const double>);
  std::uint64_t (*capped_gain)(std::span<const std::uint32_t>,
                               std::span<const std::uint32_t>,
                               std::span<const std::uint32_t>);
  std::size_t (*ascii_prefix_length)(std::string_view);
};

bool cpu_has_avx2() {
#if defined(OOVKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelTable select_table() {
  const char* env = std::getenv("OOVKIT_SIMD");
  const bool pin_scalar = env != nullptr && std::string(env) == "scalar";
#if defined(OOVKIT_HAVE_AVX2)
  if (!pin_scalar && cpu_has_avx2()) {
    return {Isa::kAvx2, &avx2::dot_norms, &avx2::capped_gain,
            &avx2::ascii_prefix_length};
  }
#else
  (void)pin_scalar;
#endif
  return {Isa::kScalar, &scalar::dot_norms, &scalar::capped_gain,
          &scalar::ascii_prefix_length};
}

const KernelTable& table() {
  static const KernelTable kTable = select_table();
  return kTable;
}

}  // namespace

std::string_view to_string(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

Isa active_isa() { return table().isa; }

bool avx2_available() { return cpu_has_avx2(); }

DotNorms dot_norms(std::span<const double> a, std::span<const double> b) {
  return table().dot_norms(a, b);
}

std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining) {
  return table().capped_gain(ids, occurrences, remaining);
}

std::size_t ascii_prefix_length(std::string_view bytes) {
  return table().ascii_prefix_length(bytes);
}

}  // namespace oovkit::simd
