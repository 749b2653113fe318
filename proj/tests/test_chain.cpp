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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hgtrap/chain.hpp"
#include "hgtrap/errors.hpp"

namespace hgtrap {
namespace {

TrapConfig yb(int n, double f_mhz) { return TrapConfig{n, mhz(f_mhz)}; }

// Cyclic coordinate search with step halving; knows nothing about Newton.
std::vector<double> brute_force_equilibrium(int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = i - 0.5 * (n - 1);
  auto energy = [&](const std::vector<double>& p) {
    double u = 0.0;
    for (int i = 0; i < n; ++i) {
      u += 0.5 * p[i] * p[i];
      for (int j = i + 1; j < n; ++j) u += 1.0 / std::abs(p[i] - p[j]);
    }
    return u;
  };
  for (double step = 0.1; step > 1e-11; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i) {
        for (double s : {step, -step}) {
          auto trial = x;
          trial[i] += s;
          if (energy(trial) < energy(x)) {
            x = trial;
            moved = true;
          }
        }
      }
    }
  }
  return x;
}

TEST(LengthScale, YtterbiumAt402kHz) { EXPECT_NEAR(length_scale(yb(3, 0.402)) * 1e6, 5.03, 0.01); }

TEST(LengthScale, YtterbiumAt502kHz) { EXPECT_NEAR(length_scale(yb(3, 0.502)) * 1e6, 4.33, 0.01); }

TEST(LengthScale, PowerLawInFrequency) {
  EXPECT_NEAR(length_scale(yb(2, 0.1)) / length_scale(yb(2, 0.4)), std::pow(4.0, 2.0 / 3.0), 1e-12);
}

TEST(LengthScale, RejectsBadTrap) {
  EXPECT_THROW(length_scale(TrapConfig{1, 0.0}), InvalidConfig);
  EXPECT_THROW(length_scale(TrapConfig{1, mhz(0.4), -1.0}), InvalidConfig);
  EXPECT_THROW(solve_equilibrium(TrapConfig{0, mhz(0.4)}), InvalidConfig);
}

TEST(Equilibrium, SingleIonAtCentre) {
  const IonChain c = solve_equilibrium(yb(1, 0.4));
  ASSERT_EQ(c.size(), 1);
  EXPECT_EQ(c.positions[0], 0.0);
  EXPECT_EQ(c.min_spacing(), 0.0);
}

TEST(Equilibrium, TwoIonsAnalytic) {
  const IonChain c = solve_equilibrium(yb(2, 0.4));
  const double x = std::pow(0.5, 2.0 / 3.0);
  EXPECT_NEAR(c.positions[1] / c.length_scale, x, 1e-12);
  EXPECT_NEAR(c.positions[0] / c.length_scale, -x, 1e-12);
}

TEST(Equilibrium, ThreeIonSpacing) {
  const IonChain c = solve_equilibrium(yb(3, 0.402));
  EXPECT_NEAR(c.min_spacing() * 1e6, 5.4, 0.1);
}

TEST(Equilibrium, MatchesBruteForceUpToFourIons) {
  for (int n = 1; n <= 4; ++n) {
    const IonChain c = solve_equilibrium(yb(n, 0.3));
    const auto ref = brute_force_equilibrium(n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(c.positions[i] / c.length_scale, ref[i], 1e-6) << "N=" << n;
  }
}

TEST(Equilibrium, ChainInvariants) {
  for (int n = 1; n <= 12; ++n) {
    const IonChain c = solve_equilibrium(yb(n, 0.25));
    const double l = c.length_scale;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += c.positions[i];
      if (i > 0) EXPECT_GT(c.positions[i], c.positions[i - 1]);
      EXPECT_NEAR(c.positions[i], -c.positions[n - 1 - i], 1e-10 * l);
    }
    EXPECT_NEAR(sum, 0.0, 1e-12 * l);
  }
}

TEST(Modes, ThreeIonFrequencies) {
  const ChainSolution s = solve_chain(yb(3, 0.402));
  EXPECT_NEAR(to_mhz(s.modes.frequencies[0]), 0.402, 1e-12);
  EXPECT_NEAR(to_mhz(s.modes.frequencies[1]), 0.696, 1e-3);
  EXPECT_NEAR(s.modes.frequencies[2] / mhz(0.402), std::sqrt(29.0 / 5.0), 1e-10);
}

TEST(Modes, ComAndBreathingForAnyLength) {
  for (int n = 2; n <= 12; ++n) {
    const ChainSolution s = solve_chain(yb(n, 0.3));
    EXPECT_NEAR(s.modes.frequencies[0] / mhz(0.3), 1.0, 1e-10) << n;
    EXPECT_NEAR(s.modes.frequencies[1] / mhz(0.3), std::sqrt(3.0), 1e-10) << n;
    for (int j = 0; j < n; ++j) EXPECT_NEAR(std::abs(s.modes.eigenvectors(j, 0)), 1.0 / std::sqrt(n), 1e-10);
  }
}

TEST(Modes, Orthonormal) {
  for (int n = 1; n <= 12; ++n) {
    const ChainSolution s = solve_chain(yb(n, 0.4));
    const Eigen::MatrixXd b = s.modes.eigenvectors;
    EXPECT_LT((b.transpose() * b - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10) << n;
    for (int m = 1; m < n; ++m) EXPECT_GT(s.modes.frequencies[m], s.modes.frequencies[m - 1]);
  }
}

TEST(Modes, RatiosIndependentOfMassAndFrequency) {
  const ChainSolution a = solve_chain(yb(5, 0.4));
  const ChainSolution b = solve_chain(TrapConfig{5, mhz(1.3), 40.0 * 1.66053906660e-27});
  for (int m = 0; m < 5; ++m)
    EXPECT_NEAR(a.modes.frequencies[m] / a.modes.frequencies[0], b.modes.frequencies[m] / b.modes.frequencies[0],
                1e-10);
}

TEST(Modes, ZeroPointDefinition) {
  const TrapConfig t = yb(3, 0.402);
  const ChainSolution s = solve_chain(t);
  for (int m = 0; m < 3; ++m)
    EXPECT_NEAR(s.modes.zero_point[m], std::sqrt(kHbar / (2.0 * t.ion_mass * s.modes.frequencies[m])), 1e-20);
}

TEST(LambDicke, ZeroWeightsGiveZero) {
  const ChainSolution s = solve_chain(yb(3, 0.402));
  const std::vector<double> w(3, 0.0);
  EXPECT_EQ(lamb_dicke_matrix(s.modes, w, 1e6).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LambDicke, CentreIonDecouplesFromBreathing) {
  const ChainSolution s = solve_chain(yb(3, 0.402));
  const std::vector<double> w(3, 1.0);
  const Eigen::MatrixXd eta = lamb_dicke_matrix(s.modes, w, 2.8e6);
  EXPECT_NEAR(eta(1, 1), 0.0, 1e-12);
  EXPECT_GT(std::abs(eta(0, 1)), 0.0);
}

TEST(LambDicke, LinearInWeightsAndScalesWithFrequency) {
  const ChainSolution s = solve_chain(yb(2, 0.4));
  const ChainSolution d = solve_chain(yb(2, 0.8));
  const std::vector<double> w1{0.3, 0.7}, w2{0.6, 1.4};
  const Eigen::MatrixXd a = lamb_dicke_matrix(s.modes, w1, 1e6);
  EXPECT_LT((lamb_dicke_matrix(s.modes, w2, 1e6) - 2.0 * a).cwiseAbs().maxCoeff(), 1e-15);
  const Eigen::MatrixXd b = lamb_dicke_matrix(d.modes, w1, 1e6);
  EXPECT_NEAR(std::pow(b(0, 0) / a(0, 0), 2), 0.5, 1e-12);
}

TEST(LambDicke, DimensionMismatch) {
  const ChainSolution s = solve_chain(yb(3, 0.402));
  const std::vector<double> w(2, 1.0);
  EXPECT_THROW(lamb_dicke_matrix(s.modes, w, 1e6), InvalidArgument);
}

}  // namespace
}  // namespace hgtrap
