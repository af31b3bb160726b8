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

// Compiled with -mavx2 -mfma. Nothing in here may run before dispatch.cc has
// confirmed CPU support.

#include <immintrin.h>

#include <algorithm>

#include "oovkit/simd/kernels.h"

namespace oovkit::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

inline std::uint64_t hsum_u64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

DotNorms dot_norms(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  const double* pa = a.data();
  const double* pb = b.data();

  // Two interleaved accumulators per quantity hide FMA latency.
  __m256d dot0 = _mm256_setzero_pd(), dot1 = _mm256_setzero_pd();
  __m256d na0 = _mm256_setzero_pd(), na1 = _mm256_setzero_pd();
  __m256d nb0 = _mm256_setzero_pd(), nb1 = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0 = _mm256_loadu_pd(pa + i);
    const __m256d a1 = _mm256_loadu_pd(pa + i + 4);
    const __m256d b0 = _mm256_loadu_pd(pb + i);
    const __m256d b1 = _mm256_loadu_pd(pb + i + 4);
    dot0 = _mm256_fmadd_pd(a0, b0, dot0);
    dot1 = _mm256_fmadd_pd(a1, b1, dot1);
    na0 = _mm256_fmadd_pd(a0, a0, na0);
    na1 = _mm256_fmadd_pd(a1, a1, na1);
    nb0 = _mm256_fmadd_pd(b0, b0, nb0);
    nb1 = _mm256_fmadd_pd(b1, b1, nb1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + i);
    const __m256d b0 = _mm256_loadu_pd(pb + i);
    dot0 = _mm256_fmadd_pd(a0, b0, dot0);
    na0 = _mm256_fmadd_pd(a0, a0, na0);
    nb0 = _mm256_fmadd_pd(b0, b0, nb0);
  }

  DotNorms out;
  out.dot = hsum(_mm256_add_pd(dot0, dot1));
  out.norm_a_sq = hsum(_mm256_add_pd(na0, na1));
  out.norm_b_sq = hsum(_mm256_add_pd(nb0, nb1));
  for (; i < n; ++i) {
    out.dot += pa[i] * pb[i];
    out.norm_a_sq += pa[i] * pa[i];
    out.norm_b_sq += pb[i] * pb[i];
  }
  return out;
}

std::uint64_t capped_gain(std::span<const std::uint32_t> ids,
                          std::span<const std::uint32_t> occurrences,
                          std::span<const std::uint32_t> remaining) {
  const std::size_t n = std::min(ids.size(), occurrences.size());
  const int* base = reinterpret_cast<const int*>(remaining.data());

  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i idx =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ids.data() + i));
    const __m256i occ = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(occurrences.data() + i));
    const __m256i rem = _mm256_i32gather_epi32(base, idx, 4);
    const __m256i credit = _mm256_min_epu32(occ, rem);
    // Widen to 64-bit lanes so long candidate lists cannot overflow.
    acc = _mm256_add_epi64(
        acc, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(credit)));
    acc = _mm256_add_epi64(
        acc, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(credit, 1)));
  }
  std::uint64_t gain = hsum_u64(acc);
  for (; i < n; ++i) gain += std::min(occurrences[i], remaining[ids[i]]);
  return gain;
}

std::size_t ascii_prefix_length(std::string_view bytes) {
  const char* p = bytes.data();
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i chunk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(chunk));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  while (i < n && static_cast<unsigned char>(p[i]) < 0x80) ++i;
  return i;
}

}  // namespace oovkit::simd::avx2
