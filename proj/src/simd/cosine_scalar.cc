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

#include <cmath>

#include "orgmatch/simd/cosine_kernel.h"

namespace orgmatch::simd {

size_t CosineThresholdScalar(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass) {
  const size_t n = block.dots.size();
  size_t passed = 0;
  for (size_t i = 0; i < n; ++i) {
    double dot = block.dots[i];
    double sim = dot == 0.0 ? 0.0 : dot / std::sqrt(block.query_sq * block.norms_sq[i]);
    double threshold = block.is_univ[i] != 0 ? block.sim_u : block.sim_o;
    uint8_t ok = sim >= threshold ? 1 : 0;
    sims[i] = sim;
    pass[i] = ok;
    passed += ok;
  }
  return passed;
}

}  // namespace orgmatch::simd
