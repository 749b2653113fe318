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

#include "hgtrap/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "hgtrap/errors.hpp"

namespace hgtrap {

namespace {

using cd = std::complex<double>;

cd unit_displacement(const PulseEnvelope& env, double delta, double t) {
  return cd(0.0, -1.0) * env.integral_exp(-delta, t);
}

double unit_phase(const PulseEnvelope& env, double delta, double t) {
  auto integrand = [&](double s) {
    return env.value(s) * (std::polar(1.0, delta * s) * unit_displacement(env, delta, s)).real();
  };
  std::vector<double> cuts = env.breakpoints();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i];
    double b = std::min(cuts[i + 1], t);
    if (b <= a) break;
    int panels = std::max(1, static_cast<int>(std::ceil(std::abs(delta) * (b - a) / kPi)));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      acc += boost::math::quadrature::gauss<double, 20>::integrate(integrand, a + p * h, a + (p + 1) * h);
    }
  }
  return acc;
}

}  // namespace

UnitIntegrals unit_integrals(const PulseEnvelope& envelope, double detuning, double t) {
  return {unit_displacement(envelope, detuning, t), unit_phase(envelope, detuning, t)};
}

PhaseSpaceTrajectory displacement_trajectory(const GateSpec& gate, const ModeSet& modes, std::span<const double> times) {
  const Eigen::MatrixXd g = mode_couplings(gate, modes);
  const std::vector<double> det = mode_detunings(gate, modes);
  const int n = modes.size();
  PhaseSpaceTrajectory out;
  out.times.assign(times.begin(), times.end());
  for (double t : times) {
    Eigen::VectorXcd a(n);
    Eigen::VectorXd phi(n);
    for (int m = 0; m < n; ++m) {
      UnitIntegrals u = unit_integrals(gate.envelope, det[m], t);
      a[m] = u.displacement;
      phi[m] = u.phase;
    }
    out.alpha.push_back(g.cast<cd>() * a.asDiagonal());
    out.theta.push_back(2.0 * g * phi.asDiagonal() * g.transpose());
  }
  return out;
}

double gate_phase(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes) {
  const Eigen::MatrixXd g = mode_couplings(gate, modes);
  const std::vector<double> det = mode_detunings(gate, modes);
  std::vector<int> list(include_modes.begin(), include_modes.end());
  if (list.empty())
    for (int m = 0; m < modes.size(); ++m) list.push_back(m);
  double theta = 0.0;
  for (int m : list) {
    if (m < 0 || m >= modes.size()) throw InvalidArgument("gate_phase: mode index out of range");
    UnitIntegrals u = unit_integrals(gate.envelope, det[m], gate.envelope.total_duration);
    theta += 2.0 * g(gate.ion_a, m) * g(gate.ion_b, m) * u.phase;
  }
  return theta;
}

double residual_displacement(const GateSpec& gate, const ModeSet& modes) {
  const double tau = gate.envelope.total_duration;
  PhaseSpaceTrajectory tr = displacement_trajectory(gate, modes, std::span<const double>(&tau, 1));
  return tr.alpha.back().cwiseAbs().maxCoeff();
}

Calibration calibrate_gate(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes) {
  const double theta = gate_phase(gate, modes, include_modes);
  if (theta == 0.0 || !std::isfinite(theta)) throw DegenerateGate("calibrate_gate: accumulated phase is zero");
  const double ratio = gate.target_phase / theta;
  if (ratio <= 0.0) throw DegenerateGate("calibrate_gate: accumulated phase has the wrong sign for the target");
  Calibration c;
  c.gate = gate;
  c.scale = std::sqrt(ratio);
  c.phase_before = theta;
  for (double& w : c.gate.sdf_amplitude) w *= c.scale;
  return c;
}

std::vector<double> max_displacement(const ModeDrive& drive, int repetitions) {
  const PulseEnvelope& env = drive.envelope;
  const double tau = env.total_duration;
  std::vector<double> grid = env.breakpoints();
  constexpr int kSamples = 400;
  for (int i = 0; i <= kSamples; ++i) grid.push_back(tau * i / kSamples);
  std::vector<double> out(drive.mode_count(), 0.0);
  for (int c = 0; c < drive.mode_count(); ++c) {
    const double weight = drive.coupling.col(c).cwiseAbs().sum();
    const cd closing = unit_displacement(env, drive.detuning[c], tau);
    for (double t : grid) {
      cd a = unit_displacement(env, drive.detuning[c], t);
      for (int k = 0; k < std::max(1, repetitions); ++k) {
        out[c] = std::max(out[c], weight * std::abs(a + static_cast<double>(k) * closing));
      }
    }
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int nodes) {
  if (nodes < 1) throw InvalidArgument("gauss_hermite: need at least one node");
  // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite polynomials.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<double> x(nodes), w(nodes);
  for (int k = 0; k < nodes; ++k) {
    x[k] = es.eigenvalues()[k];
    w[k] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
  return {x, w};
}

std::vector<PointingSample> pointing_couplings(const ModeDrive& drive, double sigma, int shots, std::uint64_t seed,
                                               PointingSampling sampling) {
  if (sigma < 0.0 || shots < 0) throw InvalidArgument("pointing_couplings: sigma and shots must be >= 0");
  BeamProfile beam = drive.beam;
  beam.center = 0.0;
  const double g0 = field_gradient(beam, 0.0);
  if (g0 == 0.0) throw InvalidArgument("pointing_couplings: beam has no gradient at its centre");
  auto gain = [&](double dz) { return field_gradient(beam, dz) / g0; };
  std::vector<PointingSample> out;
  if (sampling == PointingSampling::monte_carlo) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> offset(0.0, sigma > 0.0 ? sigma : 1.0);
    out.reserve(shots);
    for (int s = 0; s < shots; ++s) {
      Eigen::MatrixXd c = drive.coupling;
      for (int row : drive.addressed) c.row(row) *= sigma > 0.0 ? gain(offset(rng)) : 1.0;
      out.push_back({std::move(c), 1.0 / shots});
    }
    return out;
  }
  auto [x, w] = gauss_hermite(std::max(1, shots));
  const int beams = static_cast<int>(drive.addressed.size());
  const int nodes = static_cast<int>(x.size());
  int total = 1;
  for (int b = 0; b < beams; ++b) total *= nodes;
  for (int k = 0; k < total; ++k) {
    Eigen::MatrixXd c = drive.coupling;
    double weight = 1.0;
    int rest = k;
    for (int b = 0; b < beams; ++b) {
      int node = rest % nodes;
      rest /= nodes;
      c.row(drive.addressed[b]) *= gain(sigma * x[node]);
      weight *= w[node];
    }
    out.push_back({std::move(c), weight});
  }
  return out;
}

Eigen::MatrixXcd analytic_gate_state(const ModeDrive& drive, std::span<const double> nbar, int repetitions,
                                     const Eigen::MatrixXd& coupling) {
  const Eigen::MatrixXd& r = coupling.size() ? coupling : drive.coupling;
  const int n = drive.ion_count();
  const int nm = drive.mode_count();
  if (r.rows() != n || r.cols() != nm) throw InvalidArgument("analytic_gate_state: coupling shape mismatch");
  if (!nbar.empty() && static_cast<int>(nbar.size()) != nm) throw InvalidArgument("analytic_gate_state: nbar size");
  if (n > 12) throw InvalidArgument("analytic_gate_state: too many ions");
  const int dim = 1 << n;
  const double reps = repetitions;

  std::vector<cd> a(nm);
  std::vector<double> phi(nm);
  for (int c = 0; c < nm; ++c) {
    UnitIntegrals u = unit_integrals(drive.envelope, drive.detuning[c], drive.envelope.total_duration);
    a[c] = reps * u.displacement;
    phi[c] = reps * u.phase;
  }

  // x-basis label: bit (n-1-j) set means ion j is in |->.
  Eigen::MatrixXcd beta(dim, nm);
  Eigen::VectorXd phase(dim);
  for (int s = 0; s < dim; ++s) {
    phase[s] = 0.0;
    for (int c = 0; c < nm; ++c) {
      double force = 0.0;
      for (int j = 0; j < n; ++j) force += ((s >> (n - 1 - j)) & 1 ? -1.0 : 1.0) * r(j, c);
      beta(s, c) = force * a[c];
      phase[s] += phi[c] * force * force;
    }
  }
  Eigen::MatrixXcd rho_x(dim, dim);
  const double amp = 1.0 / dim;
  for (int s = 0; s < dim; ++s) {
    for (int t = 0; t < dim; ++t) {
      cd v = std::polar(amp, -(phase[s] - phase[t]));
      for (int c = 0; c < nm; ++c) {
        double nb = nbar.empty() ? 0.0 : nbar[c];
        cd bs = beta(s, c);
        cd bt = beta(t, c);
        v *= std::polar(std::exp(-(nb + 0.5) * std::norm(bs - bt)), (std::conj(bt) * bs).imag());
      }
      rho_x(s, t) = v;
    }
  }
  Eigen::MatrixXd hn = Eigen::MatrixXd::Ones(1, 1);
  Eigen::Matrix2d h;
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd next(hn.rows() * 2, hn.cols() * 2);
    for (int p = 0; p < hn.rows(); ++p)
      for (int q = 0; q < hn.cols(); ++q) next.block<2, 2>(2 * p, 2 * q) = hn(p, q) * h;
    hn = std::move(next);
  }
  return hn * rho_x * hn;
}

Eigen::MatrixXcd analytic_gate_state(const ModeDrive& drive, const NoiseModel& noise, int repetitions,
                                     std::uint64_t seed) {
  std::vector<double> nbar;
  for (int m : drive.modes) nbar.push_back(noise.nbar(m));
  if (!noise.has_pointing()) return analytic_gate_state(drive, nbar, repetitions);
  const int dim = 1 << drive.ion_count();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const PointingSample& s :
       pointing_couplings(drive, noise.pointing_sigma, noise.pointing_shots, seed, noise.pointing_sampling))
    acc += s.weight * analytic_gate_state(drive, nbar, repetitions, s.coupling);
  return acc;
}

}  // namespace hgtrap
