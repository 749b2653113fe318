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

#include "hgtrap/units.hpp"

namespace hgtrap {

/// Linear Paul trap holding a single species chain.
struct TrapConfig {
  int ion_count = 1;
  double axial_freq = 0.0;  ///< rad/s
  double ion_mass = kYb171IonMass;  ///< kg
  /// Only documents the carrier transition; gradient coupling is set by the beam waist.
  double qubit_wavelength = 435e-9;

  /// Throws InvalidConfig on a non-physical trap.
  void validate() const;
};

/// Equilibrium axial coordinates of the chain, ascending, in metres.
struct IonChain {
  std::vector<double> positions;
  double length_scale = 0.0;

  int size() const { return static_cast<int>(positions.size()); }
  /// Smallest neighbour distance; 0 for a single ion.
  double min_spacing() const;
};

/// Axial normal modes. Column m of `eigenvectors` is mode m; row j is ion j.
struct ModeSet {
  std::vector<double> frequencies;  ///< rad/s, ascending
  Eigen::MatrixXd eigenvectors;     ///< b[j][m]
  std::vector<double> zero_point;   ///< sqrt(hbar / (2 M nu_m)), metres
  Eigen::MatrixXd lamb_dicke;       ///< filled by lamb_dicke_matrix, empty until then

  int size() const { return static_cast<int>(frequencies.size()); }
};

/// Coulomb length (e^2 / (4 pi eps0 M nu^2))^(1/3).
double length_scale(const TrapConfig& trap);

/// Minimises the harmonic + Coulomb energy with a damped Newton iteration in
/// units of the Coulomb length. Throws NumericError if the gradient does not
/// drop below 1e-10.
IonChain solve_equilibrium(const TrapConfig& trap);

/// Diagonalises the axial Hessian at equilibrium.
ModeSet normal_modes(const IonChain& chain, const TrapConfig& trap);

/// eta[j][m] = weights[j] * b[j][m] * z0_m * kappa, with kappa the beam's
/// field-gradient scale in 1/m.
Eigen::MatrixXd lamb_dicke_matrix(const ModeSet& modes, std::span<const double> weights, double kappa);

/// Convenience: validate, solve, diagonalise.
struct ChainSolution {
  IonChain chain;
  ModeSet modes;
};
ChainSolution solve_chain(const TrapConfig& trap);

}  // namespace hgtrap
