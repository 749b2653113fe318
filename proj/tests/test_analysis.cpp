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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hgtrap/analysis.hpp"
#include "hgtrap/errors.hpp"
#include "hgtrap/spectra.hpp"
#include "hgtrap/units.hpp"

namespace hgtrap {
namespace {

std::vector<double> phases(int n, double offset = 0.0) {
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = offset + kPi * i / n;
  return p;
}

Eigen::Matrix4cd bell_state(double p_even, double coherence) {
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  r(0, 0) = r(3, 3) = p_even / 2.0;
  r(1, 1) = r(2, 2) = (1.0 - p_even) / 2.0;
  r(0, 3) = std::complex<double>(0.0, -coherence / 2.0);
  r(3, 0) = std::conj(r(0, 3));
  return r;
}

TEST(ParityFit, RecoversContrast) {
  const auto ph = phases(12);
  std::vector<double> y;
  for (double p : ph) y.push_back(0.953 * std::cos(2.0 * p));
  const ParityFit f = parity_fit(ph, y);
  EXPECT_NEAR(f.contrast, 0.953, 1e-12);
  EXPECT_NEAR(f.phase_offset, 0.0, 1e-12);
  EXPECT_LT(f.residual_rms, 1e-12);
}

TEST(ParityFit, ZeroAndIdeal) {
  const auto ph = phases(16);
  EXPECT_NEAR(parity_fit(ph, std::vector<double>(16, 0.0)).contrast, 0.0, 1e-15);
  const auto scan = parity_scan(bell_state(1.0, 1.0), ph);
  EXPECT_NEAR(parity_fit(ph, scan).contrast, 1.0, 1e-12);
  EXPECT_THROW(parity_fit(phases(5), std::vector<double>(5, 0.1)), FitError);
}

TEST(ParityFit, PhaseCovariant) {
  const auto rho = bell_state(0.97, 0.93);
  const auto a = phases(24), b = phases(24, 0.3);
  const ParityFit fa = parity_fit(a, parity_scan(rho, a)), fb = parity_fit(b, parity_scan(rho, a));
  EXPECT_NEAR(fa.contrast, fb.contrast, 1e-12);
  EXPECT_NEAR(std::remainder(fb.phase_offset - fa.phase_offset + 0.6, kTwoPi), 0.0, 1e-12);
  EXPECT_NEAR(fa.contrast, 0.93, 1e-12);
}

TEST(BellFidelity, Values) {
  EXPECT_NEAR(bell_fidelity(0.968, 0.0, 0.953), 0.9605, 1e-15);
  EXPECT_EQ(bell_fidelity(0.5, 0.5, 1.0), 1.0);
  EXPECT_EQ(bell_fidelity(0.25, 0.25, 0.0), 0.25);
  EXPECT_THROW(bell_fidelity(1.2, 0.0, 0.5), InvalidArgument);
  EXPECT_THROW(bell_fidelity(0.5, 0.5, -0.1), InvalidArgument);
  for (double x = 0.0; x < 0.5; x += 0.05) {
    EXPECT_LT(bell_fidelity(x, 0.3, 0.5), bell_fidelity(x + 0.05, 0.3, 0.5));
    EXPECT_LT(bell_fidelity(0.3, x, 0.5), bell_fidelity(0.3, x + 0.05, 0.5));
    EXPECT_LT(bell_fidelity(0.3, 0.3, x), bell_fidelity(0.3, 0.3, x + 0.05));
  }
  EXPECT_NEAR(bell_fidelity(bell_state(0.97, 0.95)), 0.96, 1e-12);
}

TEST(Detection, Matrix) {
  const DetectionModel m = detection_matrix(0.9891, 0.9909, 1);
  EXPECT_NEAR(m.mean_fidelity(), 0.9900, 5e-4);
  EXPECT_TRUE(detection_matrix(1.0, 1.0, 3).full.isIdentity(0.0));
  const DetectionModel m2 = detection_matrix(0.97, 0.95, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(m2.full(i, j), m2.single(i / 2, j / 2) * m2.single(i % 2, j % 2), 1e-15);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(m2.full.col(j).sum(), 1.0, 1e-12);
  EXPECT_THROW(detection_matrix(0.99, 0.99, 13), InvalidArgument);
  EXPECT_THROW(detection_matrix(0.4, 0.99, 1), InvalidArgument);
}

TEST(Detection, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.9, 1.0), v(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = 1 + trial % 4;
    const DetectionModel m = detection_matrix(u(rng), u(rng), q);
    Eigen::VectorXd p(1 << q);
    for (int i = 0; i < p.size(); ++i) p[i] = v(rng);
    p /= p.sum();
    const CorrectedPopulations c = correct_populations(m.full * p, m);
    EXPECT_LT((c.populations - p).cwiseAbs().maxCoeff(), 1e-8);
  }
  const DetectionModel id = detection_matrix(1.0, 1.0, 2);
  Eigen::VectorXd p(4);
  p << 0.1, 0.2, 0.3, 0.4;
  EXPECT_LT((correct_populations(p, id).populations - p).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Detection, MonteCarloOracle) {
  const DetectionModel m = detection_matrix(0.9891, 0.9909, 2);
  std::mt19937_64 rng(2024);
  std::discrete_distribution<int> truth({0.48, 0.02, 0.02, 0.48});
  std::bernoulli_distribution keep0(0.9891), keep1(0.9909);
  const int shots = 200000;
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(4);
  for (int s = 0; s < shots; ++s) {
    const int t = truth(rng);
    int read = 0;
    for (int q = 0; q < 2; ++q) {
      const int bit = (t >> (1 - q)) & 1;
      const bool ok = bit == 0 ? keep0(rng) : keep1(rng);
      read |= (ok ? bit : 1 - bit) << (1 - q);
    }
    counts[read] += 1.0;
  }
  const Eigen::VectorXd corrected = correct_populations(counts / shots, m).populations;
  const double sigma = std::sqrt(0.96 * 0.04 / shots) * 1.1;
  EXPECT_NEAR(corrected[0] + corrected[3], 0.96, 4.0 * sigma);
}

TEST(Detection, Singular) {
  DetectionModel m = detection_matrix(0.6, 0.6, 1);
  m.single << 0.5, 0.5, 0.5, 0.5;
  m.full = m.single;
  Eigen::VectorXd p(2);
  p << 0.5, 0.5;
  EXPECT_THROW(correct_populations(p, m), ConditioningError);
}

TEST(Simplex, Projection) {
  Eigen::VectorXd v(3);
  v << 0.8, 0.5, -0.4;
  const Eigen::VectorXd p = project_to_simplex(v);
  EXPECT_NEAR(p.sum(), 1.0, 1e-15);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_NEAR(p[0], 0.65, 1e-12);
  EXPECT_NEAR(p[1], 0.35, 1e-12);
}

std::vector<double> bsb_data(double nbar, double omega, std::vector<double>& t) {
  t.clear();
  for (int i = 0; i < 81; ++i) t.push_back(us(5.0 * i));
  return sideband_rabi(1.0, omega, nbar, t, Transition::blue, SidebandApprox::lamb_dicke);
}

TEST(PhononFit, Recovers) {
  std::vector<double> t;
  const auto p = bsb_data(0.02, khz(5.45), t);
  const PhononFit f = fit_phonon_number(t, p);
  EXPECT_NEAR(f.nbar, 0.02, 0.01);
  EXPECT_NEAR(f.omega / khz(5.45), 1.0, 0.01);
  const auto p2 = bsb_data(2.0, khz(5.45), t);
  EXPECT_NEAR(fit_phonon_number(t, p2).nbar, 2.0, 0.2);
}

TEST(PhononFit, GroundStateBoundary) {
  std::vector<double> t;
  const auto p = bsb_data(0.0, khz(5.45), t);
  const PhononFit f = fit_phonon_number(t, p);
  EXPECT_NEAR(f.nbar, 0.0, 1e-6);
  EXPECT_TRUE(f.nbar_at_boundary);
}

TEST(PhononFit, ShortRecordRejected) {
  std::vector<double> t{0.0, us(10), us(20), us(30)};
  std::vector<double> p{0.0, 0.05, 0.2, 0.4};
  EXPECT_THROW(fit_phonon_number(t, p), FitError);
}

TEST(ErrorPerGate, Linear) {
  const std::vector<double> n{1, 3, 5, 7, 9};
  std::vector<double> f;
  for (double k : n) f.push_back(0.985 - 0.035 * (k - 1.0));
  const GateErrorFit e = error_per_gate(n, f);
  EXPECT_NEAR(e.linear, 0.035, 1e-12);
  EXPECT_NEAR(e.intercept, 0.985, 1e-12);
  f.assign(5, 1.0);
  EXPECT_NEAR(error_per_gate(n, f).linear, 0.0, 1e-15);
  const std::vector<double> two{1, 3};
  EXPECT_THROW(error_per_gate(two, std::vector<double>{0.9, 0.8}), FitError);
}

TEST(ErrorPerGate, Exponential) {
  const std::vector<double> n{1, 3, 5, 7, 9};
  for (double eps : {0.035, 0.028}) {
    std::vector<double> f;
    for (double k : n) f.push_back(0.5 + 0.48 * std::pow(1.0 - 2.0 * eps, k - 1.0));
    EXPECT_NEAR(error_per_gate(n, f).exponential, eps, 0.002);
  }
}

TEST(PairState, PartialTrace) {
  // |0> (x) Bell(1,3) on three qubits, register order ion 1, 2, 3.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi[0] = psi[5] = 1.0 / std::sqrt(2.0);
  const Eigen::MatrixXcd rho = psi * psi.adjoint();
  EXPECT_NEAR(bell_fidelity(pair_state(rho, 0, 2)), 1.0, 1e-15);
  EXPECT_NEAR(parity_contrast(pair_state(rho, 0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(state_fidelity(rho, rho), 1.0, 1e-12);
}

}  // namespace
}  // namespace hgtrap
