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

#include <complex>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hgtrap/kernels.hpp"

namespace hgtrap::kernels {
namespace {

std::vector<const KernelTable*> simd_tables() {
  std::vector<const KernelTable*> out;
  if (auto* t = avx2_table()) out.push_back(t);
  if (auto* t = neon_table()) out.push_back(t);
  return out;
}

struct Inputs {
  std::vector<cd> x, y;
  std::vector<double> w;
  std::vector<int> idx;
};

Inputs random_inputs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.x.emplace_back(g(rng), g(rng));
    in.y.emplace_back(g(rng), g(rng));
    in.w.push_back(g(rng));
  }
  std::uniform_int_distribution<int> pick(0, n > 0 ? static_cast<int>(n) - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) in.idx.push_back(pick(rng));
  return in;
}

void expect_close(const std::vector<cd>& a, const std::vector<cd>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), 1e-14 * (1.0 + std::abs(a[i]))) << i;
}

TEST(Kernels, ScalarReference) {
  const KernelTable& s = scalar_table();
  std::vector<cd> x{{1, 2}, {3, -1}}, y{{0.5, 0}, {0, 0.5}};
  s.zaxpy(2, cd(0, 1), x.data(), y.data());
  EXPECT_EQ(y[0], cd(-1.5, 1));
  EXPECT_EQ(y[1], cd(1, 3.5));
  const double w[] = {2.0, -1.0};
  const int idx[] = {1, 0};
  std::vector<cd> z(2);
  s.zaxpy_gather(2, cd(1, 0), w, idx, x.data(), z.data());
  EXPECT_EQ(z[0], cd(6, -2));
  EXPECT_EQ(z[1], cd(-1, -2));
  s.hadamard(2, w, x.data(), z.data());
  EXPECT_EQ(z[0], cd(2, 4));
  EXPECT_EQ(z[1], cd(-3, 1));
}

TEST(Kernels, SimdMatchesScalar) {
  const KernelTable& ref = scalar_table();
  for (const KernelTable* t : simd_tables()) {
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 33, 250, 1023}) {
      const Inputs in = random_inputs(n, 1000 + n);
      const cd a(0.3, -1.7);
      auto y0 = in.y, y1 = in.y;
      ref.zaxpy(n, a, in.x.data(), y0.data());
      t->zaxpy(n, a, in.x.data(), y1.data());
      expect_close(y0, y1);
      y0 = in.y;
      y1 = in.y;
      ref.zaxpy_gather(n, a, in.w.data(), in.idx.data(), in.x.data(), y0.data());
      t->zaxpy_gather(n, a, in.w.data(), in.idx.data(), in.x.data(), y1.data());
      expect_close(y0, y1);
      ref.hadamard(n, in.w.data(), in.x.data(), y0.data());
      t->hadamard(n, in.w.data(), in.x.data(), y1.data());
      expect_close(y0, y1);
    }
  }
}

TEST(Kernels, ActiveHonoursOverride) {
  const KernelTable& a = active();
  const char* env = std::getenv("HGTRAP_SIMD");
  if (env && std::string(env) == "scalar") {
    EXPECT_EQ(a.name, scalar_table().name);
  } else if (!simd_tables().empty()) {
    EXPECT_EQ(a.name, simd_tables().front()->name);
  } else {
    EXPECT_EQ(a.name, "scalar");
  }
}

}  // namespace
}  // namespace hgtrap::kernels
