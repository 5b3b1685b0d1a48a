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

// AArch64 only: vdivq_f64 is not available on 32-bit NEON.

#include <arm_neon.h>

#include <cmath>

#include "orgmatch/simd/cosine_kernel.h"

namespace orgmatch::simd {

size_t CosineThresholdNeon(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass) {
  const size_t n = block.dots.size();
  const double *dots = block.dots.data();
  const double *norms = block.norms_sq.data();
  const uint8_t *is_univ = block.is_univ.data();

  const float64x2_t query_sq = vdupq_n_f64(block.query_sq);
  const float64x2_t sim_u = vdupq_n_f64(block.sim_u);
  const float64x2_t sim_o = vdupq_n_f64(block.sim_o);
  const float64x2_t zero = vdupq_n_f64(0.0);

  size_t passed = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t dot = vld1q_f64(dots + i);
    float64x2_t norm = vld1q_f64(norms + i);
    float64x2_t sim = vdivq_f64(dot, vsqrtq_f64(vmulq_f64(query_sq, norm)));
    uint64x2_t is_zero = vceqq_f64(dot, zero);
    sim = vbslq_f64(is_zero, zero, sim);

    uint64_t flags[2] = {is_univ[i] != 0 ? ~0ULL : 0ULL, is_univ[i + 1] != 0 ? ~0ULL : 0ULL};
    float64x2_t threshold = vbslq_f64(vld1q_u64(flags), sim_u, sim_o);
    uint64x2_t ge = vcgeq_f64(sim, threshold);

    vst1q_f64(sims.data() + i, sim);
    uint8_t a = static_cast<uint8_t>(vgetq_lane_u64(ge, 0) & 1);
    uint8_t b = static_cast<uint8_t>(vgetq_lane_u64(ge, 1) & 1);
    pass[i] = a;
    pass[i + 1] = b;
    passed += a + b;
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
