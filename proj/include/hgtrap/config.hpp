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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgtrap/chain.hpp"
#include "hgtrap/envelope.hpp"
#include "hgtrap/errors.hpp"
#include "hgtrap/gate.hpp"
#include "hgtrap/optics.hpp"

namespace hgtrap {

enum class ScenarioKind { modes, beam_profile, spectrum, sdf_single, gate, bell, repeat_gates, chain_sweep, budget };

std::string_view to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(std::string_view name);
/// CLI subcommand of a kind (beam_profile -> beam, repeat_gates -> repeat, ...).
std::string_view subcommand_name(ScenarioKind k);

/// Thrown by parse_config with every problem found, one per line.
class ConfigError : public InvalidConfig {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Ions are numbered from 1 in configuration files and output labels and
/// from 0 everywhere in the library.
struct GateConfig {
  int ion_a = 0;
  int ion_b = 2;
  int mediator_mode = 0;
  double detuning = 0.0;   ///< rad/s
  PulseEnvelope envelope;  ///< peak is always 1
  double target_phase = kPi / 4.0;
  double sdf_amplitude = 0.0;  ///< rad/s, before calibration
  bool calibrate = true;
  double crosstalk = 0.0;  ///< nearest-neighbour fraction
  /// Modes in the dynamics; empty means the mediator only.
  std::vector<int> include_modes;
  bool all_modes = false;
};

struct SimulationConfig {
  int repetitions = 1;
  int samples_per_gate = 48;
  std::vector<int> fock_levels;
  int max_doublings = 2;
};

struct DetectionConfig {
  double f_bright = 1.0;
  double f_dark = 1.0;
  bool correct = true;
  int shots = 0;  ///< per analysis phase; 0 uses exact probabilities
};

struct ProfileConfig {
  double z_min = -4e-6;
  double z_max = 4e-6;
  int points = 401;
  double neighbour_distance = 0.0;  ///< 0 takes the chain spacing (or 5.4 um without a trap)
};

struct SpectrumConfig {
  int ion = 0;
  double start = 0.0;  ///< rad/s
  double stop = 0.0;
  int points = 0;
  double duration = 0.0;
  std::vector<double> nbar;
};

enum class SdfExperiment { detuned, resonant, bsb_thermometry };
std::string_view to_string(SdfExperiment e);

struct SdfConfig {
  SdfExperiment experiment = SdfExperiment::detuned;
  double sdf_amplitude = 0.0;  ///< rad/s (peak)
  double detuning = 0.0;
  PulseEnvelope envelope;  ///< detuned: the pulse; others: duration of the scan
  int points = 121;
  double bsb_rabi = 0.0;  ///< thermometry: blue-sideband Rabi frequency at n = 0
  double nbar = 0.0;
  int shots = 0;  ///< per time point; 0 fits exact data
};

struct BellConfig {
  int phases = 24;
};

struct RepeatConfig {
  std::vector<int> gate_counts = {1, 3, 5, 7, 9};
};

struct SweepPoint {
  int ion_count = 2;
  double axial_freq = 0.0;
  double heating_com = 0.0;        ///< quanta/s
  double heating_breathing = 0.0;  ///< quanta/s
  double nbar_com = 0.0;
  double nbar_breathing = 0.0;
};

struct SweepGate {
  double detuning = 0.0;
  PulseEnvelope envelope;
};

struct SweepConfig {
  std::vector<SweepPoint> points;
  std::vector<int> mediators = {0, 1};  ///< mode index: 0 COM, 1 breathing
  SweepGate com;
  SweepGate breathing;
  double crosstalk = 0.0;
};

struct BudgetSection {
  std::vector<int> gate_counts = {1, 3, 5, 7, 9};
  PointingSampling full_pointing_sampling = PointingSampling::quadrature;
  int full_pointing_shots = 2;
  std::map<std::string, double> reference;  ///< per source
  std::optional<double> reference_total;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::modes;
  std::string name;
  std::optional<std::uint64_t> seed;
  TrapConfig trap;
  BeamProfile beam;
  GateConfig gate;
  NoiseModel noise;
  SimulationConfig simulation;
  DetectionConfig detection;
  ProfileConfig profile;
  SpectrumConfig spectrum;
  SdfConfig sdf;
  BellConfig bell;
  RepeatConfig repeat;
  SweepConfig sweep;
  BudgetSection budget;

  /// Whether a run draws random numbers.
  bool stochastic() const;
};

/// Reads and validates a scenario. Throws ConfigError listing unknown keys,
/// unit mismatches, missing fields and out-of-range values.
Scenario parse_config(const std::string& path);
Scenario parse_config_string(const std::string& text);

/// Canonical YAML: the sections the kind uses, every field explicit, fixed
/// key order and units, numbers with 17 significant digits.
std::string emit_config(const Scenario& scenario);

}  // namespace hgtrap
