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

#include <immintrin.h>

#include "hgtrap/kernels.hpp"

namespace hgtrap::kernels {

namespace {

// Two complex values per register: [re0, im0, re1, im1].
inline __m256d cmul_scalar(__m256d ar, __m256d ai, __m256d x) {
  __m256d swapped = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

void zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(yv, cmul_scalar(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void zaxpy_gather(std::size_t n, cd a, const double* w, const int* idx, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128d x0 = _mm_loadu_pd(xs + 2 * idx[i]);
    __m128d x1 = _mm_loadu_pd(xs + 2 * idx[i + 1]);
    __m256d xv = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
    __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    xv = _mm256_mul_pd(xv, wv);
    __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(yv, cmul_scalar(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * (w[i] * x[idx[i]]);
}

void hadamard(std::size_t n, const double* r, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d rv = _mm256_set_pd(r[i + 1], r[i + 1], r[i], r[i]);
    _mm256_storeu_pd(ys + 2 * i, _mm256_mul_pd(rv, _mm256_loadu_pd(xs + 2 * i)));
  }
  for (; i < n; ++i) y[i] = r[i] * x[i];
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable t{"avx2", zaxpy, zaxpy_gather, hadamard};
  return t;
}

}  // namespace hgtrap::kernels
