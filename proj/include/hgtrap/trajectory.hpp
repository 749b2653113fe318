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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hgtrap/gate.hpp"

namespace hgtrap {

/// Phase-space integrals of a unit-strength force on one mode:
///   a(t)   = -i int_0^t f(s) exp(-i delta s) ds
///   Phi(t) = int_0^t f(s) Re[exp(i delta s) a(s)] ds
/// A coupling matrix r turns them into alpha_jm = r_jm a_m and
/// Theta_jk = 2 sum_m r_jm r_km Phi_m.
struct UnitIntegrals {
  std::complex<double> displacement;
  double phase = 0.0;
};

UnitIntegrals unit_integrals(const PulseEnvelope& envelope, double detuning, double t);

/// alpha_jm(t) and Theta_jk(t) sampled on `times`, for every chain ion and mode.
struct PhaseSpaceTrajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> alpha;  ///< chain ions x chain modes
  std::vector<Eigen::MatrixXd> theta;   ///< chain ions x chain ions
};

PhaseSpaceTrajectory displacement_trajectory(const GateSpec& gate, const ModeSet& modes, std::span<const double> times);

/// Theta_ab at the end of the pulse, summed over the listed modes (all when empty).
double gate_phase(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes = {});

/// Largest |alpha_jm(tau)| over ions and modes.
double residual_displacement(const GateSpec& gate, const ModeSet& modes);

struct Calibration {
  GateSpec gate;
  double scale = 1.0;
  double phase_before = 0.0;
};

/// Scales every force amplitude by sqrt(target_phase / Theta), with Theta
/// summed over the listed modes (all when empty). Throws DegenerateGate when
/// Theta vanishes or has the wrong sign.
Calibration calibrate_gate(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes = {});

/// Largest |sum_j r_jm a_m(t)| over the pulse, per included mode, with every
/// ion pushing the same way.
std::vector<double> max_displacement(const ModeDrive& drive, int repetitions = 1);

struct PointingSample {
  Eigen::MatrixXd coupling;
  double weight;
};

/// Coupling matrices for pointing jitter: each addressed row is scaled by
/// G(dz) / G(0) for an independent Gaussian beam offset dz. Monte Carlo draws
/// `shots` samples of equal weight; quadrature takes the tensor Gauss-Hermite
/// rule with `shots` nodes per addressed beam.
std::vector<PointingSample> pointing_couplings(const ModeDrive& drive, double sigma, int shots, std::uint64_t seed,
                                               PointingSampling sampling = PointingSampling::monte_carlo);

/// Nodes and weights of the probabilists' Gauss-Hermite rule (weights sum to 1).
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int nodes);

/// Exact qubit state after `repetitions` back-to-back pulses from |0...0>,
/// with the included modes initially thermal. Basis order follows
/// drive.ions, first ion most significant. `coupling` overrides
/// drive.coupling when non-empty.
Eigen::MatrixXcd analytic_gate_state(const ModeDrive& drive, std::span<const double> nbar, int repetitions = 1,
                                     const Eigen::MatrixXd& coupling = {});

/// Average of analytic_gate_state under the noise model's pointing jitter.
Eigen::MatrixXcd analytic_gate_state(const ModeDrive& drive, const NoiseModel& noise, int repetitions,
                                     std::uint64_t seed);

}  // namespace hgtrap
