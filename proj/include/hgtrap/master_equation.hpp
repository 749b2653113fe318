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
#include <vector>

#include <Eigen/Dense>

#include "hgtrap/gate.hpp"

namespace hgtrap {

struct EvolveOptions {
  int repetitions = 1;        ///< back-to-back pulses; the drive phase restarts with each
  int samples_per_gate = 48;  ///< output samples per pulse (plus t = 0)
  std::vector<int> fock_levels;  ///< per included mode; empty selects default_fock_levels
  int max_doublings = 2;         ///< adaptive retries on TruncationError
  std::uint64_t seed = 1;        ///< pointing-jitter shots
  std::vector<int> initial_bits;  ///< per driven ion, 0 or 1; empty means all 0
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Use the density-matrix solver even for closed dynamics.
  bool force_density_matrix = false;
};

struct TraceLog {
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;  ///< of the final qubit state (and full state when small)
  double final_purity = 1.0;
  long steps = 0;
  int shots = 1;
  int dimension = 0;
  bool pure_state = false;
  std::vector<int> fock_levels;
};

struct SimResult {
  std::vector<int> ions;   ///< chain indices of the qubit register
  std::vector<int> modes;  ///< chain indices of the included modes
  std::vector<double> time;
  /// Per sample, probabilities of the 2^n register outcomes (first ion most
  /// significant); a leaked ion reads as 0.
  std::vector<std::vector<double>> populations;
  std::vector<std::vector<double>> mode_occupation;
  /// Per sample and mode, displacement with every ion in |+>.
  std::vector<std::vector<std::complex<double>>> displacement;
  /// Per sample, accumulated phase between the two addressed ions.
  std::vector<double> two_qubit_phase;
  /// Register state after each pulse.
  std::vector<Eigen::MatrixXcd> gate_states;
  Eigen::MatrixXcd final_state;  ///< register x included modes (shot average)
  Eigen::MatrixXcd qubit_state;  ///< register only
  TraceLog trace_log;
};

/// Fock levels per included mode: max(15, ceil(8 (nbar + 1) + 6 |alpha|max sqrt(reps)))
/// for the mediator-like modes and max(4, ceil(3 + 4 nbar + 6 |alpha|max sqrt(reps)))
/// for weakly driven spectators (|alpha|max < 0.1). nbar includes the quanta
/// the heating channel adds over the run.
std::vector<int> default_fock_levels(const ModeDrive& drive, const NoiseModel& noise, int repetitions = 1);

/// Lindblad evolution of the driven register and included modes.
/// Hamiltonian: sum_jm g_jm f(t) X_j (a_m e^{i d_m t} + a_m^dag e^{-i d_m t}).
/// Channels: heating sqrt(ndot) a^dag (and sqrt(ndot) a for the up_down bath),
/// sigma_z dephasing at 1/T2 (shared or per ion), |1> -> leak at 1/tau on
/// addressed ions, pointing jitter averaged over shots. Closed dynamics use a
/// state-vector path.
SimResult evolve_master_equation(const ModeDrive& drive, const NoiseModel& noise, const EvolveOptions& options = {});

/// Single-ion SDF: P(|1>) over time for the given gate on ion gate.ion_a.
SimResult detuned_sdf_oscillation(const GateSpec& gate, const ModeSet& modes, const NoiseModel& noise,
                                  const EvolveOptions& options = {});

}  // namespace hgtrap
