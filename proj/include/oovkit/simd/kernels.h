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

// Data-parallel inner loops. Each kernel has a scalar reference in
// oovkit::simd::scalar and, on x86-64, an AVX2 variant in oovkit::simd::avx2.
// The unqualified entry points dispatch once at startup based on CPUID; set
// OOVKIT_SIMD=scalar in the environment to pin the scalar path.

#ifndef OOVKIT_SIMD_KERNELS_H_
#define OOVKIT_SIMD_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace oovkit::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

// Instruction set the dispatched entry points use.
Isa active_isa();

// True when the AVX2 variants are compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

struct DotNorms {
  double dot = 0.0;
  double norm_a_sq = 0.0;
  double norm_b_sq = 0.0;
};

// Single pass over two equal-length vectors. Lengths must match.
DotNorms dot_norms(std::span<const double> a, std::span<const double> b);

// sum_i min(occurrences[i], remaining[ids[i]]). `ids` and `occurrences` have
// equal length; every id indexes into `remaining`.
std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining);

// Length of the longest all-ASCII prefix of `bytes`.
std::size_t ascii_prefix_length(std::string_view bytes);

namespace scalar {
DotNorms dot_norms(std::span<const double> a, std::span<const double> b);
std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining);
std::size_t ascii_prefix_length(std::string_view bytes);
}  // namespace scalar

#if defined(OOVKIT_HAVE_AVX2)
namespace avx2 {
DotNorms dot_norms(std::span<const double> a, std::span<const double> b);
std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining);
std::size_t ascii_prefix_length(std::string_view bytes);
}  // namespace avx2
#endif

}  // namespace oovkit::simd

#endif  // OOVKIT_SIMD_KERNELS_H_
