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


#include "hgtrap/budget.hpp"

#include <algorithm>
#include <string>

#include "hgtrap/analysis.hpp"
#include "hgtrap/errors.hpp"
#include "hgtrap/parallel.hpp"
#include "hgtrap/trajectory.hpp"

namespace hgtrap {

std::string_view to_string(ErrorSource s) {
  switch (s) {
    case ErrorSource::dephasing: return "dephasing";
    case ErrorSource::heating: return "heating";
    case ErrorSource::crosstalk: return "crosstalk";
    case ErrorSource::lifetime: return "lifetime";
    case ErrorSource::pointing: return "pointing";
    case ErrorSource::spectator_modes: return "spectator_modes";
  }
  return "?";
}

ErrorSource parse_error_source(std::string_view name) {
  for (ErrorSource s : kErrorSources)
    if (to_string(s) == name) return s;
  throw InvalidArgument("unknown error source '" + std::string(name) + "'");
}

void BudgetConfig::validate(const ModeSet& modes) const {
  const int n_ions = static_cast<int>(modes.eigenvectors.rows());
  gate.validate(n_ions, modes.size());
  noise.validate(modes.size());
  beam.validate();
  if (crosstalk < 0.0 || crosstalk >= 1.0) throw InvalidArgument("crosstalk fraction must be in [0, 1)");
  for (int m : include_modes)
    if (m < 0 || m >= modes.size()) throw InvalidArgument("include_modes entry out of range");
  if (gate_counts.size() < 3) throw InvalidArgument("budget needs at least three gate counts");
  for (int n : gate_counts)
    if (n < 1 || n % 2 == 0) throw InvalidArgument("gate counts must be odd and positive");
  if (full_pointing_shots < 1) throw InvalidArgument("full_pointing_shots must be positive");
}

const BudgetEntry& ErrorBudget::entry(ErrorSource s) const {
  for (const auto& e : entries)
    if (e.source == s) return e;
  throw InvalidArgument("budget has no entry for " + std::string(to_string(s)));
}

std::vector<double> repeated_gate_fidelity(const ModeDrive& drive, const NoiseModel& noise, int ion_a, int ion_b,
                                           std::span<const int> gate_counts, const EvolveOptions& options) {
  EvolveOptions o = options;
  o.repetitions = *std::max_element(gate_counts.begin(), gate_counts.end());
  const SimResult r = evolve_master_equation(drive, noise, o);
  const int qa = drive.row_of(ion_a), qb = drive.row_of(ion_b);
  std::vector<double> f;
  for (int n : gate_counts) f.push_back(bell_fidelity(pair_state(r.gate_states[n - 1], qa, qb)));
  return f;
}

namespace {

struct Job {
  const ModeDrive* drive;
  NoiseModel noise;
  std::vector<double> fidelity;
};

NoiseModel baseline(const NoiseModel& n) {
  NoiseModel b;
  b.initial_nbar = n.initial_nbar;
  return b;
}

}  // namespace

ErrorBudget build_error_budget(const ChainSolution& chain, const BudgetConfig& config) {
  const ModeSet& modes = chain.modes;
  config.validate(modes);
  const GateSpec& gate = config.gate;
  std::vector<int> include = config.include_modes;
  if (include.empty()) include = {gate.mediator_mode};

  const GateSpec base = calibrate_gate(gate, modes, include).gate;
  const ModeDrive base_drive = make_drive(base, modes, include, config.beam);

  GateSpec xt = gate;
  if (config.crosstalk > 0.0) add_crosstalk(xt, chain.chain, config.beam, config.crosstalk);
  const ModeDrive xt_drive = make_drive(calibrate_gate(xt, modes, include).gate, modes, include, config.beam);

  const ModeDrive all_drive = make_drive(calibrate_gate(gate, modes).gate, modes, {}, config.beam);

  const NoiseModel& noise = config.noise;
  const NoiseModel quiet = baseline(noise);

  std::vector<Job> jobs;
  jobs.push_back({&base_drive, quiet, {}});
  std::vector<int> job_of(kErrorSources.size(), -1);
  auto add = [&](ErrorSource s, bool on, const ModeDrive& d, NoiseModel n) {
    if (!on) return;
    job_of[static_cast<int>(s)] = static_cast<int>(jobs.size());
    jobs.push_back({&d, std::move(n), {}});
  };
  {
    NoiseModel n = quiet;
    n.qubit_t2 = noise.qubit_t2;
    n.dephasing = noise.dephasing;
    add(ErrorSource::dephasing, noise.has_dephasing(), base_drive, n);
  }
  {
    NoiseModel n = quiet;
    n.heating_rates = noise.heating_rates;
    n.heating_bath = noise.heating_bath;
    add(ErrorSource::heating, noise.has_heating(), base_drive, n);
  }
  add(ErrorSource::crosstalk, config.crosstalk > 0.0, xt_drive, quiet);
  {
    NoiseModel n = quiet;
    n.metastable_lifetime = noise.metastable_lifetime;
    add(ErrorSource::lifetime, noise.has_lifetime(), base_drive, n);
  }
  {
    NoiseModel n = quiet;
    n.pointing_sigma = noise.pointing_sigma;
    n.pointing_shots = noise.pointing_shots;
    n.pointing_sampling = noise.pointing_sampling;
    add(ErrorSource::pointing, noise.has_pointing(), base_drive, n);
  }
  add(ErrorSource::spectator_modes, static_cast<int>(include.size()) < modes.size(), all_drive, quiet);
  const int full_job = static_cast<int>(jobs.size());
  {
    NoiseModel n = noise;
    n.pointing_sampling = config.full_pointing_sampling;
    n.pointing_shots = config.full_pointing_shots;
    jobs.push_back({&xt_drive, n, {}});
  }

  parallel_for(static_cast<int>(jobs.size()), [&](int i) {
    Job& j = jobs[i];
    j.fidelity = repeated_gate_fidelity(*j.drive, j.noise, gate.ion_a, gate.ion_b, config.gate_counts, config.options);
  });

  std::vector<double> counts(config.gate_counts.begin(), config.gate_counts.end());
  auto per_gate = [&](const std::vector<double>& f) { return error_per_gate(counts, f).linear; };
  const std::vector<double>& ideal = jobs[0].fidelity;
  const double ideal_rate = per_gate(ideal);
  const double ideal_single = 1.0 - ideal[0];

  ErrorBudget out;
  out.gate_counts = config.gate_counts;
  out.ideal_fidelity = ideal;
  for (ErrorSource s : kErrorSources) {
    BudgetEntry e;
    e.source = s;
    const int j = job_of[static_cast<int>(s)];
    if (j >= 0) {
      e.enabled = true;
      e.fidelity = jobs[j].fidelity;
      e.error = std::max(0.0, per_gate(e.fidelity) - ideal_rate);
      e.single_gate = std::max(0.0, 1.0 - e.fidelity[0] - ideal_single);
    }
    out.sum += e.error;
    out.entries.push_back(std::move(e));
  }
  out.full_fidelity = jobs[full_job].fidelity;
  const GateErrorFit full = error_per_gate(counts, out.full_fidelity);
  out.full_model = std::max(0.0, full.linear - ideal_rate);
  out.full_exponential = full.exponential;
  out.full_single_gate = 1.0 - out.full_fidelity[0];
  out.gap = out.full_model - out.sum;
  out.calibrated_omega = std::abs(base.sdf_amplitude[gate.ion_a]);
  out.residual_displacement = residual_displacement(base, modes);
  return out;
}

}  // namespace hgtrap
