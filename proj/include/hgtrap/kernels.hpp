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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Inner loops of the density-matrix Liouvillian. Every variant works on
// interleaved std::complex<double> rows; the scalar table is the reference
// implementation and the others must agree with it to rounding.

namespace hgtrap::kernels {

using cd = std::complex<double>;

struct KernelTable {
  std::string_view name;
  /// y[i] += a * x[i]
  void (*zaxpy)(std::size_t n, cd a, const cd* x, cd* y);
  /// y[i] += a * w[i] * x[idx[i]]
  void (*zaxpy_gather)(std::size_t n, cd a, const double* w, const int* idx, const cd* x, cd* y);
  /// y[i] = r[i] * x[i]
  void (*hadamard)(std::size_t n, const double* r, const cd* x, cd* y);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Selected once per process: HGTRAP_SIMD=scalar|avx2|neon forces a variant,
/// otherwise the widest supported one.
const KernelTable& active();

}  // namespace hgtrap::kernels
