// Copyright 2026 The orgmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built with -mavx2; only reached after the dispatcher confirmed AVX2.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "orgmatch/simd/cosine_kernel.h"

namespace orgmatch::simd {

size_t CosineThresholdAvx2(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass) {
  const size_t n = block.dots.size();
  const double *dots = block.dots.data();
  const double *norms = block.norms_sq.data();
  const uint8_t *is_univ = block.is_univ.data();

  const __m256d query_sq = _mm256_set1_pd(block.query_sq);
  const __m256d sim_u = _mm256_set1_pd(block.sim_u);
  const __m256d sim_o = _mm256_set1_pd(block.sim_o);
  const __m256d zero = _mm256_setzero_pd();
  const __m256i zero_i = _mm256_setzero_si256();

  size_t passed = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dot = _mm256_loadu_pd(dots + i);
    __m256d norm = _mm256_loadu_pd(norms + i);
    __m256d sim = _mm256_div_pd(dot, _mm256_sqrt_pd(_mm256_mul_pd(query_sq, norm)));
    sim = _mm256_andnot_pd(_mm256_cmp_pd(dot, zero, _CMP_EQ_OQ), sim);

    int32_t flags;
    std::memcpy(&flags, is_univ + i, sizeof(flags));
    __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(flags));
    __m256d univ_mask = _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, zero_i));
    __m256d threshold = _mm256_blendv_pd(sim_o, sim_u, univ_mask);

    int bits = _mm256_movemask_pd(_mm256_cmp_pd(sim, threshold, _CMP_GE_OQ));
    _mm256_storeu_pd(sims.data() + i, sim);
    pass[i + 0] = static_cast<uint8_t>(bits & 1);
    pass[i + 1] = static_cast<uint8_t>((bits >> 1) & 1);
    pass[i + 2] = static_cast<uint8_t>((bits >> 2) & 1);
    pass[i + 3] = static_cast<uint8_t>((bits >> 3) & 1);
    passed += static_cast<size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; i < n; ++i) {
    double dot = dots[i];
    double sim = dot == 0.0 ? 0.0 : dot / std::sqrt(block.query_sq * norms[i]);
    double threshold = is_univ[i] != 0 ? block.sim_u : block.sim_o;
    uint8_t ok = sim >= threshold ? 1 : 0;
    sims[i] = sim;
    pass[i] = ok;
    passed += ok;
  }
  return passed;
}

}  // namespace orgmatch::simd
