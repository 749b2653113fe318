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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include "hgtrap/errors.hpp"
#include "hgtrap/trajectory.hpp"

namespace hgtrap {
namespace {

using cd = std::complex<double>;

ChainSolution three_ions() { return solve_chain(TrapConfig{3, mhz(0.402)}); }

GateSpec paper_gate(const ModeSet& modes, double omega = khz(2.5)) {
  return make_pair_gate({0, 2}, 0, khz(10), PulseEnvelope::sin2(us(120), us(20)), kPi / 4.0, omega, modes);
}

// a(t) and Phi(t) by direct ODE integration of
//   da/dt = -i f(t) exp(-i d t),  dPhi/dt = f(t) Re[exp(i d t) a].
UnitIntegrals ode_integrals(const PulseEnvelope& env, double d, double t) {
  using State = std::vector<double>;
  State x{0.0, 0.0, 0.0};
  auto rhs = [&](const State& s, State& dx, double tt) {
    const double f = env.value(tt);
    const cd e = std::exp(cd(0.0, -d * tt));
    const cd da = cd(0.0, -1.0) * f * e;
    dx[0] = da.real();
    dx[1] = da.imag();
    dx[2] = f * (std::conj(e) * cd(s[0], s[1])).real();
  };
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
  const auto bp = env.breakpoints();
  double t0 = 0.0;
  for (double b : bp) {
    if (b <= t0 || b > t) continue;
    ode::integrate_adaptive(stepper, rhs, x, t0, b, 1e-7);
    t0 = b;
  }
  if (t > t0) ode::integrate_adaptive(stepper, rhs, x, t0, t, 1e-7);
  return {cd(x[0], x[1]), x[2]};
}

TEST(Envelope, ShapeAndIntegral) {
  const PulseEnvelope e = PulseEnvelope::sin2(us(120), us(20));
  EXPECT_EQ(e.value(0.0), 0.0);
  EXPECT_NEAR(e.value(us(120)), 0.0, 1e-15);
  EXPECT_NEAR(e.value(us(10)), 0.5, 1e-12);
  EXPECT_EQ(e.value(us(60)), 1.0);
  EXPECT_EQ(e.value(us(130)), 0.0);
  for (double w : {0.0, khz(10), khz(-37)}) {
    for (double t : {us(5), us(20), us(77), us(120)}) {
      auto re = [&](double s) { return e.value(s) * std::cos(w * s); };
      auto im = [&](double s) { return e.value(s) * std::sin(w * s); };
      using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
      double r = 0, i = 0;
      double t0 = 0.0;
      for (double b : e.breakpoints()) {
        if (b <= t0 || b > t) continue;
        r += Q::integrate(re, t0, b, 10, 1e-14);
        i += Q::integrate(im, t0, b, 10, 1e-14);
        t0 = b;
      }
      if (t > t0) {
        r += Q::integrate(re, t0, t, 10, 1e-14);
        i += Q::integrate(im, t0, t, 10, 1e-14);
      }
      EXPECT_NEAR(std::abs(e.integral_exp(w, t) - cd(r, i)), 0.0, 1e-15);
    }
  }
  EXPECT_THROW(PulseEnvelope::sin2(us(10), us(6)).validate(), std::invalid_argument);
}

TEST(UnitIntegrals, MatchOdeOracle) {
  for (const PulseEnvelope& env : {PulseEnvelope::flat(us(100)), PulseEnvelope::sin2(us(120), us(20))}) {
    for (double d : {khz(10), khz(-4.2), khz(8.333)}) {
      for (double t : {us(13), us(60), us(100)}) {
        const UnitIntegrals a = unit_integrals(env, d, t), b = ode_integrals(env, d, t);
        EXPECT_NEAR(std::abs(a.displacement - b.displacement), 0.0, 1e-9 * us(100));
        EXPECT_NEAR(a.phase, b.phase, 1e-9 * us(100) * us(100));
      }
    }
  }
}

TEST(Trajectory, LoopClosureFlat) {
  const auto s = three_ions();
  GateSpec g = make_pair_gate({0, 2}, 0, khz(10), PulseEnvelope::flat(us(100)), kPi / 4.0, khz(2.5), s.modes);
  EXPECT_LT(std::abs(unit_integrals(g.envelope, g.detuning, us(100)).displacement) * khz(2.5), 1e-12);
  for (int k : {2, 3}) {
    const double tau = k * us(100);
    EXPECT_LT(std::abs(unit_integrals(PulseEnvelope::flat(tau), khz(10), tau).displacement) * khz(2.5), 1e-12);
  }
  const auto traj = displacement_trajectory(g, s.modes, std::vector<double>{us(100)});
  EXPECT_LT(std::abs(traj.alpha[0](0, 0)), 1e-12);
}

TEST(Trajectory, PhaseQuadraticInForce) {
  const auto s = three_ions();
  const double a = gate_phase(paper_gate(s.modes, khz(1.0)), s.modes);
  const double b = gate_phase(paper_gate(s.modes, khz(2.0)), s.modes);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
}

TEST(Trajectory, ThetaSymmetricAndMatchesGatePhase) {
  const auto s = three_ions();
  const GateSpec g = paper_gate(s.modes);
  const auto traj = displacement_trajectory(g, s.modes, std::vector<double>{us(60), us(120)});
  const Eigen::MatrixXd th = traj.theta.back();
  EXPECT_LT((th - th.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(th(0, 2), gate_phase(g, s.modes), 1e-12);
}

TEST(Calibration, ScalesAndIsIdempotent) {
  const auto s = three_ions();
  const GateSpec g = paper_gate(s.modes);
  const std::vector<int> med{0};
  const Calibration c = calibrate_gate(g, s.modes, med);
  EXPECT_NEAR(gate_phase(c.gate, s.modes, med), kPi / 4.0, 1e-12);
  const Calibration again = calibrate_gate(c.gate, s.modes, med);
  EXPECT_NEAR(again.scale, 1.0, 1e-12);
  // Theta at a quarter of the target needs twice the force.
  GateSpec q = c.gate;
  for (double& a : q.sdf_amplitude) a *= 0.5;
  EXPECT_NEAR(calibrate_gate(q, s.modes, med).scale, 2.0, 1e-12);
  EXPECT_NEAR(to_khz(std::abs(c.gate.sdf_amplitude[0])), 2.5, 0.1);
}

TEST(Calibration, DegenerateGate) {
  const auto s = three_ions();
  GateSpec g = paper_gate(s.modes);
  for (double& a : g.sdf_amplitude) a = 0.0;
  EXPECT_THROW(calibrate_gate(g, s.modes), DegenerateGate);
}

TEST(Pointing, GaussHermiteMoments) {
  for (int n : {1, 2, 3, 5, 8}) {
    const auto [x, w] = gauss_hermite(n);
    double m0 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
      m0 += w[i];
      m2 += w[i] * x[i] * x[i];
      m4 += w[i] * std::pow(x[i], 4);
    }
    EXPECT_NEAR(m0, 1.0, 1e-13);
    if (n >= 2) EXPECT_NEAR(m2, 1.0, 1e-12);
    if (n >= 3) EXPECT_NEAR(m4, 3.0, 1e-11);
  }
}

TEST(Pointing, DeterministicShots) {
  const auto s = three_ions();
  const GateSpec g = calibrate_gate(paper_gate(s.modes), s.modes).gate;
  const std::vector<int> med{0};
  const ModeDrive d = make_drive(g, s.modes, med, BeamProfile{BeamKind::zero_pi, um(1.0), 0.0, 0.0});
  const auto a = pointing_couplings(d, um(0.03), 20, 99);
  const auto b = pointing_couplings(d, um(0.03), 20, 99);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coupling, b[i].coupling);
  const auto q = pointing_couplings(d, um(0.03), 3, 0, PointingSampling::quadrature);
  EXPECT_EQ(q.size(), 9u);
}

}  // namespace
}  // namespace hgtrap
