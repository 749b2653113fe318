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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hgtrap {

struct ParityFit {
  double contrast = 0.0;  ///< C, clipped to [0, 1]
  double contrast_error = 0.0;
  double phase_offset = 0.0;  ///< phi0 in (-pi, pi]
  double phase_error = 0.0;
  double residual_rms = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();  ///< of (C cos phi0, -C sin phi0)
};

/// Least-squares fit of Pi(phi) = C cos(2 phi + phi0). Needs at least 8
/// phases covering one period of cos(2 phi).
ParityFit parity_fit(std::span<const double> phases, std::span<const double> parity);

/// Populations of |00>, |01>, |10>, |11> after pi/2 analysis pulses of
/// phase phi on both qubits.
Eigen::Vector4d analysis_populations(const Eigen::Matrix4cd& rho, double phase);

/// P00 + P11 - P01 - P10.
double parity(const Eigen::Vector4d& populations);

/// Parity P00 + P11 - P01 - P10 after pi/2 analysis pulses of phase phi on
/// both qubits of a two-qubit state (basis |00>, |01>, |10>, |11>).
std::vector<double> parity_scan(const Eigen::Matrix4cd& rho, std::span<const double> phases);

/// F = (P00 + P11 + C) / 2.
double bell_fidelity(double p00, double p11, double contrast);

/// Two-qubit reduced state of qubits (q1, q2) of an n-qubit register state,
/// first qubit most significant.
Eigen::Matrix4cd pair_state(const Eigen::MatrixXcd& rho, int q1, int q2);

/// 2 |rho_{00,11}|: the cos(2 phi) parity contrast of a pair state.
double parity_contrast(const Eigen::Matrix4cd& rho);

/// Bell fidelity of a pair state from its populations and parity contrast.
double bell_fidelity(const Eigen::Matrix4cd& rho);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two density matrices.
double state_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

struct DetectionModel {
  double f_bright = 1.0;  ///< P(read 0 | true 0)
  double f_dark = 1.0;    ///< P(read 1 | true 1)
  int qubits = 1;
  Eigen::Matrix2d single;  ///< column-stochastic, columns = true state
  Eigen::MatrixXd full;    ///< single^{(x) N}

  double mean_fidelity() const { return 0.5 * (f_bright + f_dark); }
};

/// Throws InvalidArgument for fidelities outside (0.5, 1] or N outside [1, 12].
DetectionModel detection_matrix(double f_bright, double f_dark, int qubits);

struct CorrectedPopulations {
  Eigen::VectorXd populations;
  double residual = 0.0;  ///< ||P_meas - M P||_2
  bool constrained = false;
};

/// argmin ||P_meas - M P||_2 over the probability simplex. Throws
/// ConditioningError when M is numerically singular.
CorrectedPopulations correct_populations(const Eigen::VectorXd& measured, const DetectionModel& model);

/// Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct PhononFit {
  double nbar = 0.0;
  double nbar_error = 0.0;
  double omega = 0.0;  ///< blue-sideband Rabi frequency for n = 0, rad/s
  double omega_error = 0.0;
  double residual_rms = 0.0;
  bool nbar_at_boundary = false;
};

/// Fits P1(t) = sum_n p_n(nbar) sin^2(Omega sqrt(n+1) t / 2) to blue-sideband
/// data. Throws FitError when the data cover less than one Rabi period or the
/// fit does not converge.
PhononFit fit_phonon_number(std::span<const double> times, std::span<const double> p1);

struct GateErrorFit {
  double linear = 0.0;  ///< -dF/dn
  double linear_error = 0.0;
  double exponential = 0.0;  ///< k/2 for F = 1/2 + A exp(-k n)
  double exponential_error = 0.0;
  double intercept = 0.0;  ///< linear fit at n = 1
};

/// Per-gate error from Bell fidelity after n gates (odd n). Weights default
/// to 1. Throws FitError for fewer than three points.
GateErrorFit error_per_gate(std::span<const double> gate_counts, std::span<const double> fidelity,
                            std::span<const double> weights = {});

}  // namespace hgtrap
