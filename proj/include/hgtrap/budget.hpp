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

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "hgtrap/chain.hpp"
#include "hgtrap/gate.hpp"
#include "hgtrap/master_equation.hpp"

namespace hgtrap {

enum class ErrorSource { dephasing, heating, crosstalk, lifetime, pointing, spectator_modes };

inline constexpr std::array<ErrorSource, 6> kErrorSources = {
    ErrorSource::dephasing, ErrorSource::heating,  ErrorSource::crosstalk,
    ErrorSource::lifetime,  ErrorSource::pointing, ErrorSource::spectator_modes};

std::string_view to_string(ErrorSource s);
ErrorSource parse_error_source(std::string_view name);

struct BudgetConfig {
  /// Pair gate before calibration and without crosstalk.
  GateSpec gate;
  BeamProfile beam;
  /// Force on the nearest neighbour as a fraction of the target's; 0 disables.
  double crosstalk = 0.0;
  NoiseModel noise;
  /// Modes simulated for every source except spectator_modes; empty means the mediator.
  std::vector<int> include_modes;
  /// Odd gate counts for the per-gate fit.
  std::vector<int> gate_counts = {1, 3, 5, 7, 9};
  /// Pointing jitter in the all-sources run.
  PointingSampling full_pointing_sampling = PointingSampling::quadrature;
  int full_pointing_shots = 2;
  EvolveOptions options;

  void validate(const ModeSet& modes) const;
};

struct BudgetEntry {
  ErrorSource source;
  bool enabled = false;
  double error = 0.0;        ///< per-gate error above the noiseless gate, clamped at 0
  double single_gate = 0.0;  ///< 1 - F after one gate, above the noiseless gate
  std::vector<double> fidelity;
};

struct ErrorBudget {
  std::vector<int> gate_counts;
  std::vector<BudgetEntry> entries;  ///< in kErrorSources order
  std::vector<double> ideal_fidelity;
  std::vector<double> full_fidelity;
  double sum = 0.0;
  double full_model = 0.0;
  double full_single_gate = 0.0;
  double full_exponential = 0.0;
  double gap = 0.0;  ///< full_model - sum
  double calibrated_omega = 0.0;  ///< |force| on ion_a after calibration, rad/s
  double residual_displacement = 0.0;

  const BudgetEntry& entry(ErrorSource s) const;
};

/// Bell fidelity of the gate pair after each of `gate_counts` gates, from
/// one run of max(gate_counts) back-to-back pulses.
std::vector<double> repeated_gate_fidelity(const ModeDrive& drive, const NoiseModel& noise, int ion_a, int ion_b,
                                           std::span<const int> gate_counts, const EvolveOptions& options);

/// One run per enabled source with only that source on, one noiseless run and
/// one with everything on. Each entry is the linear per-gate error over
/// gate_counts minus that of the noiseless gate. Runs execute on the worker pool.
ErrorBudget build_error_budget(const ChainSolution& chain, const BudgetConfig& config);

}  // namespace hgtrap
