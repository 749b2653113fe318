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

#include "hgtrap/gate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgtrap/errors.hpp"

namespace hgtrap {

void GateSpec::validate(int n_ions, int n_modes, bool single_ion) const {
  auto in_range = [n_ions](int j) { return j >= 0 && j < n_ions; };
  if (!in_range(ion_a) || !in_range(ion_b)) throw InvalidConfig("gate: ion index out of range");
  if (!single_ion && ion_a == ion_b) throw InvalidConfig("gate: ion_pair must name two different ions");
  if (mediator_mode < 0 || mediator_mode >= n_modes) throw InvalidConfig("gate: mediator_mode out of range");
  if (!std::isfinite(detuning)) throw InvalidConfig("gate: detuning must be finite");
  if (!single_ion && detuning == 0.0) throw InvalidConfig("gate: detuning must be nonzero for an entangling gate");
  if (!(target_phase > -kPi && target_phase <= kPi)) throw InvalidConfig("gate: target_phase must lie in (-pi, pi]");
  if (static_cast<int>(sdf_amplitude.size()) != n_ions)
    throw InvalidConfig("gate: sdf_amplitude needs one entry per ion");
  for (double w : sdf_amplitude)
    if (!std::isfinite(w)) throw InvalidConfig("gate: sdf_amplitude must be finite");
  envelope.validate();
}

std::string_view to_string(DephasingModel m) {
  return m == DephasingModel::correlated ? "correlated" : "independent";
}

std::string_view to_string(HeatingBath b) { return b == HeatingBath::up_down ? "up_down" : "up_only"; }

std::string_view to_string(PointingSampling p) {
  return p == PointingSampling::monte_carlo ? "monte_carlo" : "quadrature";
}

PointingSampling parse_pointing_sampling(std::string_view name) {
  if (name == "monte_carlo") return PointingSampling::monte_carlo;
  if (name == "quadrature") return PointingSampling::quadrature;
  throw InvalidConfig("unknown pointing sampling '" + std::string(name) + "'");
}

DephasingModel parse_dephasing_model(std::string_view name) {
  if (name == "correlated") return DephasingModel::correlated;
  if (name == "independent") return DephasingModel::independent;
  throw InvalidConfig("unknown dephasing model '" + std::string(name) + "'");
}

HeatingBath parse_heating_bath(std::string_view name) {
  if (name == "up_down") return HeatingBath::up_down;
  if (name == "up_only") return HeatingBath::up_only;
  throw InvalidConfig("unknown heating bath '" + std::string(name) + "'");
}

void NoiseModel::validate(int n_modes) const {
  auto non_negative = [](double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidConfig(std::string("noise: ") + field + " must be >= 0");
  };
  non_negative(qubit_t2, "qubit_t2");
  non_negative(metastable_lifetime, "metastable_lifetime");
  non_negative(pointing_sigma, "pointing_sigma");
  if (pointing_shots < 0) throw InvalidConfig("noise: pointing_shots must be >= 0");
  if (pointing_sampling == PointingSampling::quadrature && pointing_shots > 12)
    throw InvalidConfig("noise: at most 12 quadrature nodes per beam");
  for (double r : heating_rates) non_negative(r, "heating_rates");
  for (double n : initial_nbar) non_negative(n, "initial_nbar");
  if (!heating_rates.empty() && static_cast<int>(heating_rates.size()) != n_modes)
    throw InvalidConfig("noise: heating_rates needs one entry per mode");
  if (!initial_nbar.empty() && static_cast<int>(initial_nbar.size()) != n_modes)
    throw InvalidConfig("noise: initial_nbar needs one entry per mode");
}

double NoiseModel::heating_rate(int mode) const {
  return mode < static_cast<int>(heating_rates.size()) ? heating_rates[mode] : 0.0;
}

double NoiseModel::nbar(int mode) const {
  return mode < static_cast<int>(initial_nbar.size()) ? initial_nbar[mode] : 0.0;
}

bool NoiseModel::has_heating() const {
  return std::any_of(heating_rates.begin(), heating_rates.end(), [](double r) { return r > 0.0; });
}

bool NoiseModel::is_closed() const {
  bool thermal = std::any_of(initial_nbar.begin(), initial_nbar.end(), [](double n) { return n > 0.0; });
  return !has_dephasing() && !has_lifetime() && !has_heating() && !thermal;
}

int ModeDrive::row_of(int chain_ion) const {
  auto it = std::find(ions.begin(), ions.end(), chain_ion);
  return it == ions.end() ? -1 : static_cast<int>(it - ions.begin());
}

Eigen::MatrixXd mode_couplings(const GateSpec& gate, const ModeSet& modes) {
  const int n = modes.size();
  gate.validate(n, n, true);
  const double ref = std::abs(modes.eigenvectors(gate.ion_a, gate.mediator_mode));
  if (ref == 0.0) throw DegenerateGate("gate: first ion does not participate in the mediator mode");
  const double nu_med = modes.frequencies[gate.mediator_mode];
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      g(j, m) = gate.sdf_amplitude[j] * modes.eigenvectors(j, m) / ref * std::sqrt(nu_med / modes.frequencies[m]);
    }
  }
  return g;
}

std::vector<double> mode_detunings(const GateSpec& gate, const ModeSet& modes) {
  const double beat = modes.frequencies.at(gate.mediator_mode) + gate.detuning;
  std::vector<double> d(modes.frequencies.size());
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = beat - modes.frequencies[m];
  return d;
}

ModeDrive make_drive(const GateSpec& gate, const ModeSet& modes, std::span<const int> include_modes,
                     const BeamProfile& beam) {
  const Eigen::MatrixXd g = mode_couplings(gate, modes);
  const std::vector<double> det = mode_detunings(gate, modes);
  const int n = modes.size();

  ModeDrive drive;
  drive.envelope = gate.envelope;
  drive.beam = beam;
  drive.beam.center = 0.0;
  if (include_modes.empty()) {
    for (int m = 0; m < n; ++m) drive.modes.push_back(m);
  } else {
    drive.modes.assign(include_modes.begin(), include_modes.end());
    std::sort(drive.modes.begin(), drive.modes.end());
    drive.modes.erase(std::unique(drive.modes.begin(), drive.modes.end()), drive.modes.end());
    for (int m : drive.modes)
      if (m < 0 || m >= n) throw InvalidArgument("make_drive: mode index out of range");
  }
  for (int j = 0; j < n; ++j) {
    bool addressed = j == gate.ion_a || j == gate.ion_b;
    bool coupled = std::any_of(drive.modes.begin(), drive.modes.end(), [&](int m) { return g(j, m) != 0.0; });
    if (addressed || coupled) drive.ions.push_back(j);
  }
  drive.coupling.resize(drive.ion_count(), drive.mode_count());
  for (int r = 0; r < drive.ion_count(); ++r)
    for (int c = 0; c < drive.mode_count(); ++c) drive.coupling(r, c) = g(drive.ions[r], drive.modes[c]);
  for (int m : drive.modes) drive.detuning.push_back(det[m]);
  drive.addressed.push_back(drive.row_of(gate.ion_a));
  if (gate.ion_b != gate.ion_a) drive.addressed.push_back(drive.row_of(gate.ion_b));
  return drive;
}

GateSpec make_pair_gate(std::pair<int, int> pair, int mediator, double detuning, const PulseEnvelope& envelope,
                        double target_phase, double omega, const ModeSet& modes) {
  GateSpec gate;
  gate.ion_a = pair.first;
  gate.ion_b = pair.second;
  gate.mediator_mode = mediator;
  gate.detuning = detuning;
  gate.envelope = envelope;
  gate.target_phase = target_phase;
  gate.sdf_amplitude.assign(modes.size(), 0.0);
  gate.validate(modes.size(), modes.size(), true);
  const double ba = modes.eigenvectors(gate.ion_a, mediator);
  const double bb = modes.eigenvectors(gate.ion_b, mediator);
  if (ba == 0.0 || bb == 0.0) throw DegenerateGate("pair gate: an addressed ion is a node of the mediator mode");
  // The mediator phase has the sign of b_a * b_b * Omega_a * Omega_b * detuning.
  double sign = (ba * bb * detuning > 0.0) == (target_phase > 0.0) ? 1.0 : -1.0;
  gate.sdf_amplitude[gate.ion_a] = omega;
  gate.sdf_amplitude[gate.ion_b] = sign * omega;
  gate.validate(modes.size(), modes.size());
  return gate;
}

void add_crosstalk(GateSpec& gate, const IonChain& chain, const BeamProfile& beam, double nearest_neighbour_fraction) {
  const int n = chain.size();
  if (static_cast<int>(gate.sdf_amplitude.size()) != n) throw InvalidArgument("add_crosstalk: size mismatch");
  if (nearest_neighbour_fraction < 0.0) throw InvalidArgument("add_crosstalk: fraction must be >= 0");
  BeamProfile centred = beam;
  centred.center = 0.0;
  const double g0 = field_gradient(centred, 0.0);
  if (g0 == 0.0) throw InvalidArgument("add_crosstalk: beam has no gradient at its centre");
  auto model = [&](double d) { return field_gradient(centred, d) / g0; };

  const std::vector<double> base = gate.sdf_amplitude;
  std::vector<int> targets{gate.ion_a};
  if (gate.ion_b != gate.ion_a) targets.push_back(gate.ion_b);
  for (int t : targets) {
    double d_nn = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == t) continue;
      double d = std::abs(chain.positions[j] - chain.positions[t]);
      if (d_nn == 0.0 || d < d_nn) d_nn = d;
    }
    double scale = 1.0;
    bool neighbours_only = false;
    if (nearest_neighbour_fraction > 0.0) {
      double m_nn = std::abs(model(d_nn));
      if (m_nn > 1e-12) {
        scale = nearest_neighbour_fraction / m_nn;
      } else {
        neighbours_only = true;
      }
    }
    for (int j = 0; j < n; ++j) {
      if (j == t) continue;
      double d = chain.positions[j] - chain.positions[t];
      double frac;
      if (neighbours_only) {
        frac = std::abs(std::abs(d) - d_nn) < 1e-3 * d_nn ? -nearest_neighbour_fraction : 0.0;
      } else {
        frac = scale * model(d);
      }
      gate.sdf_amplitude[j] += frac * base[t];
    }
  }
}

}  // namespace hgtrap
