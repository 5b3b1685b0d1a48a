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

#include <cstdlib>
#include <string_view>
#include <vector>

#include "orgmatch/simd/cosine_kernel.h"

namespace orgmatch::simd {
namespace {

bool CpuSupports(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(ORGMATCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(ORGMATCH_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> DetectIsas() {
  std::vector<Isa> out = {Isa::kScalar};
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (CpuSupports(isa)) out.push_back(isa);
  }
  return out;
}

Isa SelectIsa() {
  const auto &available = AvailableIsas();
  Isa best = available.back();
  const char *env = std::getenv("ORGMATCH_SIMD");
  if (env == nullptr || *env == '\0') return best;
  std::string_view want(env);
  for (Isa isa : available) {
    if (want == IsaName(isa)) return isa;
  }
  return Isa::kScalar;
}

}  // namespace

const char *IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "scalar";
}

std::span<const Isa> AvailableIsas() {
  static const std::vector<Isa> isas = DetectIsas();
  return isas;
}

Isa ActiveIsa() {
  static const Isa isa = SelectIsa();
  return isa;
}

CosineThresholdFn CosineThresholdFor(Isa isa) {
  switch (isa) {
#if defined(ORGMATCH_HAVE_AVX2)
    case Isa::kAvx2:
      if (CpuSupports(Isa::kAvx2)) return &CosineThresholdAvx2;
      break;
#endif
#if defined(ORGMATCH_HAVE_NEON)
    case Isa::kNeon: return &CosineThresholdNeon;
#endif
    default: break;
  }
  return &CosineThresholdScalar;
}

size_t CosineThreshold(const CosineBlock &block, std::span<double> sims, std::span<uint8_t> pass) {
  static const CosineThresholdFn fn = CosineThresholdFor(ActiveIsa());
  return fn(block, sims, pass);
}

}  // namespace orgmatch::simd
