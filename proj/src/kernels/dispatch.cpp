// Copyright 2026 The hgtrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hgtrap/kernels.hpp"

namespace hgtrap::kernels {

#if defined(HGTRAP_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif
#if defined(HGTRAP_HAVE_NEON)
const KernelTable& neon_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(HGTRAP_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(HGTRAP_HAVE_NEON)
  return &neon_table_impl();
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("HGTRAP_SIMD");
    std::string want = env ? env : "auto";
    if (want == "scalar") return scalar_table();
    if (want == "avx2") {
      if (auto* t = avx2_table()) return *t;
      throw std::runtime_error("HGTRAP_SIMD=avx2 requested but AVX2/FMA is unavailable");
    }
    if (want == "neon") {
      if (auto* t = neon_table()) return *t;
      throw std::runtime_error("HGTRAP_SIMD=neon requested but NEON is unavailable");
    }
    if (auto* t = avx2_table()) return *t;
    if (auto* t = neon_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace hgtrap::kernels
