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

#include <arm_neon.h>

#include "hgtrap/kernels.hpp"

namespace hgtrap::kernels {

namespace {

// One complex value per register: [re, im].
inline float64x2_t cmul_scalar(float64x2_t ar, float64x2_t ai_signed, float64x2_t x) {
  float64x2_t swapped = vextq_f64(x, x, 1);
  return vfmaq_f64(vmulq_f64(ar, x), ai_signed, swapped);
}

void zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_lanes[2] = {-a.imag(), a.imag()};
  const float64x2_t ai = vld1q_f64(ai_lanes);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t yv = vld1q_f64(ys + 2 * i);
    vst1q_f64(ys + 2 * i, vaddq_f64(yv, cmul_scalar(ar, ai, vld1q_f64(xs + 2 * i))));
  }
}

void zaxpy_gather(std::size_t n, cd a, const double* w, const int* idx, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_lanes[2] = {-a.imag(), a.imag()};
  const float64x2_t ai = vld1q_f64(ai_lanes);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vmulq_n_f64(vld1q_f64(xs + 2 * idx[i]), w[i]);
    float64x2_t yv = vld1q_f64(ys + 2 * i);
    vst1q_f64(ys + 2 * i, vaddq_f64(yv, cmul_scalar(ar, ai, xv)));
  }
}

void hadamard(std::size_t n, const double* r, const cd* x, cd* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(ys + 2 * i, vmulq_n_f64(vld1q_f64(xs + 2 * i), r[i]));
}

}  // namespace

const KernelTable& neon_table_impl() {
  static const KernelTable t{"neon", zaxpy, zaxpy_gather, hadamard};
  return t;
}

}  // namespace hgtrap::kernels
