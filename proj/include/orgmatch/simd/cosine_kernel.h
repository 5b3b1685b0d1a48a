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

#ifndef ORGMATCH_SIMD_COSINE_KERNEL_H_
#define ORGMATCH_SIMD_COSINE_KERNEL_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace orgmatch::simd {

// Score-and-threshold pass over a contiguous block of registry names.
//
// For every i:
//   sims[i] = dots[i] / sqrt(query_sq * norms_sq[i])   (0 when dots[i] == 0)
//   pass[i] = sims[i] >= (is_univ[i] ? sim_u : sim_o)
//
// Squared norms are integer sums, so for integer dot products the product
// is exact, identical vectors score exactly 1 and no score exceeds 1. All
// variants evaluate the same correctly rounded IEEE operations in the same
// order, so their outputs are bit-identical. Requires norms_sq[i] > 0 and
// query_sq > 0.
struct CosineBlock {
  std::span<const double> dots;
  std::span<const double> norms_sq;
  std::span<const uint8_t> is_univ;
  double query_sq = 0.0;
  double sim_u = 1.0;
  double sim_o = 1.0;
};

// Returns the number of passing entries.
using CosineThresholdFn = size_t (*)(const CosineBlock &block, std::span<double> sims,
                                     std::span<uint8_t> pass);

size_t CosineThresholdScalar(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass);
#if defined(ORGMATCH_HAVE_AVX2)
size_t CosineThresholdAvx2(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass);
#endif
#if defined(ORGMATCH_HAVE_NEON)
size_t CosineThresholdNeon(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass);
#endif

enum class Isa { kScalar, kAvx2, kNeon };

const char *IsaName(Isa isa);

// Best variant supported by both the build and the running CPU. The
// ORGMATCH_SIMD environment variable ("scalar", "avx2", "neon") can force a
// lower tier; unsupported requests fall back to scalar.
Isa ActiveIsa();

// Variants compiled into this build and supported by this CPU, scalar first.
std::span<const Isa> AvailableIsas();

CosineThresholdFn CosineThresholdFor(Isa isa);

// Dispatches to ActiveIsa(). Resolved once on first call.
size_t CosineThreshold(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass);

}  // namespace orgmatch::simd

#endif  // ORGMATCH_SIMD_COSINE_KERNEL_H_
