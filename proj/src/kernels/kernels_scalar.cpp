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

#include "hgtrap/kernels.hpp"

namespace hgtrap::kernels {

namespace {

void zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void zaxpy_gather(std::size_t n, cd a, const double* w, const int* idx, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * (w[i] * x[idx[i]]);
}

void hadamard(std::size_t n, const double* r, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", zaxpy, zaxpy_gather, hadamard};
  return t;
}

}  // namespace hgtrap::kernels
