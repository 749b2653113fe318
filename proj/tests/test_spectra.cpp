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
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hgtrap/errors.hpp"
#include "hgtrap/spectra.hpp"

namespace hgtrap {
namespace {

std::vector<double> grid(double t_max, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  return t;
}

// |<n+s| exp(i eta (a + a^dag)) |n>| from a dense matrix exponential.
double coupling_oracle(double eta, int n, int s) {
  const int dim = 80;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) x(k, k + 1) = x(k + 1, k) = std::sqrt(static_cast<double>(k + 1));
  const Eigen::MatrixXcd u = (std::complex<double>(0.0, eta) * x).exp();
  return std::abs(u(n + s, n));
}

TEST(TransitionRabi, MatchesDisplacementMatrixElements) {
  for (double eta : {0.02, 0.1, 0.3}) {
    for (int n : {0, 1, 4, 9}) {
      for (int s : {-1, 0, 1}) {
        if (n + s < 0) continue;
        EXPECT_NEAR(transition_rabi(eta, 1.0, n, s, SidebandApprox::full), coupling_oracle(eta, n, s), 1e-10)
            << eta << " " << n << " " << s;
      }
    }
  }
  EXPECT_EQ(transition_rabi(0.1, 1.0, 0, -1, SidebandApprox::lamb_dicke), 0.0);
  EXPECT_NEAR(transition_rabi(0.1, 2.0, 3, 1, SidebandApprox::lamb_dicke), 0.4, 1e-15);
}

TEST(SidebandRabi, GroundStateSinusoid) {
  const double omega = khz(5.45);
  const auto t = grid(us(400), 401);
  const auto p = sideband_rabi(1.0, omega, 0.0, t, Transition::blue, SidebandApprox::lamb_dicke);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p[i], std::pow(std::sin(omega * t[i] / 2.0), 2), 1e-14);
  EXPECT_NEAR(1.0 / 5.45e3 * 1e6, 183.5, 0.1);
}

TEST(SidebandRabi, ThermalSumOracle) {
  const double omega = khz(5.45), nbar = 0.02;
  const std::vector<double> t{us(91.7)};
  const double p = sideband_rabi(1.0, omega, nbar, t, Transition::blue, SidebandApprox::lamb_dicke)[0];
  double ref = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double pn = std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);
    ref += pn * std::pow(std::sin(omega * std::sqrt(n + 1.0) * t[0] / 2.0), 2);
  }
  EXPECT_NEAR(p, ref, 1e-12);
  // Ground-state fraction transfers fully at its pi time; excited levels add a little.
  EXPECT_GT(p, 1.0 / (1.0 + nbar));
  EXPECT_LT(p, 1.0);
}

TEST(SidebandRabi, ZeroCouplingAndTruncationGuard) {
  const auto t = grid(us(100), 11);
  for (double v : sideband_rabi(0.0, khz(100), 0.5, t, Transition::blue)) EXPECT_EQ(v, 0.0);
  for (double v : sideband_rabi(0.0, khz(100), 0.5, t, Transition::red)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(sideband_rabi(0.1, khz(100), 5.0, t, Transition::blue, SidebandApprox::full, 20), TruncationError);
}

TEST(Spectrum, ThreeIonSidebands) {
  const ChainSolution s = solve_chain(TrapConfig{3, mhz(0.402)});
  BeamProfile b{BeamKind::hg01_ideal, um(1.0), s.chain.positions[0], khz(250)};
  SpectrumProbe probe;
  for (int i = 0; i <= 2200; ++i) probe.detunings.push_back(mhz(-1.1 + 1e-3 * i));
  probe.duration = us(100);
  probe.nbar = {0.5, 0.5, 0.5};
  const auto p = simulate_spectrum(s.chain, s.modes, b, 0, probe);
  auto at = [&](double f_mhz) { return p[static_cast<std::size_t>(std::lround((f_mhz + 1.1) * 1e3))]; };
  for (double f : {0.402, 0.696, 0.968}) {
    EXPECT_GT(at(f), 0.05) << f;
    EXPECT_GT(at(-f), 0.01) << f;
    EXPECT_LT(at(f + 0.05), 1e-2);
  }
  EXPECT_LT(at(0.0), 1e-3);
  for (double v : p) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Spectrum, GroundStateSuppressesRed) {
  const ChainSolution s = solve_chain(TrapConfig{1, mhz(0.502)});
  BeamProfile b{BeamKind::hg01_ideal, um(1.0), 0.0, khz(251)};
  SpectrumProbe probe{{-mhz(0.502), mhz(0.502)}, us(91.7), {0.0}};
  const auto p = simulate_spectrum(s.chain, s.modes, b, 0, probe);
  EXPECT_LT(p[0], 1e-3);
  EXPECT_GT(p[1], 0.9);
}

TEST(Spectrum, NoCouplingFlat) {
  const ChainSolution s = solve_chain(TrapConfig{2, mhz(0.5)});
  BeamProfile b{BeamKind::hg01_ideal, um(1.0), s.chain.positions[1], 0.0};
  SpectrumProbe probe{{-mhz(0.5), 0.0, mhz(0.5), mhz(0.866)}, us(100), {}};
  for (double v : simulate_spectrum(s.chain, s.modes, b, 1, probe)) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace hgtrap
