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
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hgtrap/chain.hpp"
#include "hgtrap/envelope.hpp"
#include "hgtrap/optics.hpp"
#include "hgtrap/units.hpp"

namespace hgtrap {

/// Bichromatic state-dependent-force gate on a chain.
///
/// sdf_amplitude[j] is the force amplitude of ion j expressed on the mediator
/// mode: ion j couples to mode m with
///   g_jm = sdf_amplitude[j] * b_jm / |b_{ion_a, mediator}| * sqrt(nu_med / nu_m),
/// so for a centre-of-mass gate it is the bare coupling to that mode.
struct GateSpec {
  int ion_a = 0;
  int ion_b = 1;
  int mediator_mode = 0;
  double detuning = 0.0;  ///< beat note minus mediator frequency, rad/s
  PulseEnvelope envelope;
  double target_phase = kPi / 4.0;
  std::vector<double> sdf_amplitude;  ///< per chain ion, signed, rad/s

  /// single_ion allows ion_a == ion_b and zero detuning (SDF experiments).
  void validate(int n_ions, int n_modes, bool single_ion = false) const;
};

enum class DephasingModel { correlated, independent };
enum class HeatingBath { up_down, up_only };
/// monte_carlo: pointing_shots random offsets per beam.
/// quadrature: Gauss-Hermite rule with pointing_shots nodes per beam.
enum class PointingSampling { monte_carlo, quadrature };

std::string_view to_string(DephasingModel m);
std::string_view to_string(HeatingBath b);
std::string_view to_string(PointingSampling p);
DephasingModel parse_dephasing_model(std::string_view name);
HeatingBath parse_heating_bath(std::string_view name);
PointingSampling parse_pointing_sampling(std::string_view name);

/// Noise channels. A zero time constant disables the channel.
struct NoiseModel {
  double qubit_t2 = 0.0;  ///< s
  DephasingModel dephasing = DephasingModel::correlated;
  std::vector<double> heating_rates;  ///< per chain mode, quanta/s; empty means none
  HeatingBath heating_bath = HeatingBath::up_down;
  double metastable_lifetime = 0.0;  ///< s
  double pointing_sigma = 0.0;       ///< m
  int pointing_shots = 200;
  PointingSampling pointing_sampling = PointingSampling::monte_carlo;
  std::vector<double> initial_nbar;  ///< per chain mode; empty means ground state

  void validate(int n_modes) const;

  bool has_dephasing() const { return qubit_t2 > 0.0; }
  bool has_lifetime() const { return metastable_lifetime > 0.0; }
  bool has_pointing() const { return pointing_sigma > 0.0 && pointing_shots > 0; }
  double heating_rate(int mode) const;
  double nbar(int mode) const;
  bool has_heating() const;
  /// True when the evolution is unitary for a pure initial state.
  bool is_closed() const;
};

/// A gate reduced to what the dynamics need: the driven ions, the included
/// modes, their couplings and detunings.
struct ModeDrive {
  std::vector<int> ions;   ///< chain indices, ascending
  std::vector<int> modes;  ///< chain mode indices, ascending
  Eigen::MatrixXd coupling;      ///< ions x modes, rad/s
  std::vector<double> detuning;  ///< per included mode, rad/s
  PulseEnvelope envelope;
  /// Rows of `coupling` that belong to addressed ions; pointing jitter rescales them.
  std::vector<int> addressed;
  /// Gradient profile used to turn a pointing offset into a coupling change.
  BeamProfile beam;

  int ion_count() const { return static_cast<int>(ions.size()); }
  int mode_count() const { return static_cast<int>(modes.size()); }
  /// Row of a chain ion in `ions`, or -1.
  int row_of(int chain_ion) const;
};

/// Full coupling matrix g_jm (chain ions x chain modes).
Eigen::MatrixXd mode_couplings(const GateSpec& gate, const ModeSet& modes);

/// Detuning of every chain mode from the bichromatic beat note.
std::vector<double> mode_detunings(const GateSpec& gate, const ModeSet& modes);

/// Builds the drive on the listed modes (all modes when empty). An ion is
/// kept when it is addressed or couples to any included mode.
ModeDrive make_drive(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes = {},
                     const BeamProfile& beam = {});

/// Two-ion gate with equal force magnitudes; the sign of the second ion is
/// chosen so the accumulated phase has the sign of target_phase.
GateSpec make_pair_gate(std::pair<int, int> pair, int mediator, double detuning, const PulseEnvelope& envelope,
                        double target_phase, double omega, const ModeSet& modes);

/// Adds spill-over force on every ion from each addressed ion's beam.
/// The fraction follows the beam's gradient profile; when
/// nearest_neighbour_fraction > 0 the profile is rescaled so that the
/// nearest neighbour sees exactly that fraction.
void add_crosstalk(GateSpec& gate, const IonChain& chain, const BeamProfile& beam,
                   double nearest_neighbour_fraction = 0.0);

}  // namespace hgtrap
