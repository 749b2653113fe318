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


#include "hgtrap/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <set>

#include <boost/math/tools/minima.hpp>

#include "hgtrap/analysis.hpp"
#include "hgtrap/budget.hpp"
#include "hgtrap/chain.hpp"
#include "hgtrap/kernels.hpp"
#include "hgtrap/master_equation.hpp"
#include "hgtrap/optics.hpp"
#include "hgtrap/parallel.hpp"
#include "hgtrap/spectra.hpp"
#include "hgtrap/trajectory.hpp"

#ifndef HGTRAP_GIT
#define HGTRAP_GIT "unknown"
#endif

namespace hgtrap {

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

std::string version_string() { return HGTRAP_VERSION; }

namespace {

constexpr double kDefaultSpacing = 5.4e-6;

class Output {
 public:
  Output(const RunOptions& o, RunReport& r) : opts_(o), report_(r) {}

  OutputFormat format() const { return opts_.format; }

  void file(const std::string& name, const std::string& text) {
    if (opts_.write) write_text(opts_.out_dir / name, text);
    report_.manifest.push_back(name);
  }

  // Table as name.csv or name.json depending on the format.
  void table(const std::string& name, const Table& t) {
    if (opts_.format == OutputFormat::csv)
      file(name + ".csv", to_csv(t));
    else
      file(name + ".json", to_json(t).dump(2) + "\n");
  }

  void json(const std::string& name, const Json& j) { file(name + ".json", rounded(j).dump(2) + "\n"); }

  void metric(const std::string& key, double v) {
    if (!std::isfinite(v)) throw NumericError("metric " + key + " is not finite", v);
    report_.metrics[key] = round_sig(v);
  }
  void metric(const std::string& key, const Json& v) { report_.metrics[key] = rounded(v); }

 private:
  const RunOptions& opts_;
  RunReport& report_;
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::string label(int ion) { return std::to_string(ion + 1); }


void check_guards(const SimResult& r) {
  const TraceLog& l = r.trace_log;
  if (l.max_trace_error > 1e-8) throw NumericError("trace drifted beyond 1e-8", l.max_trace_error);
  if (l.min_eigenvalue < -1e-9) throw NumericError("density matrix lost positivity", l.min_eigenvalue);
  for (const auto& p : r.populations) {
    double sum = 0.0;
    for (double x : p) {
      if (x < -1e-9 || x > 1.0 + 1e-9) throw NumericError("population outside [0, 1]", x);
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-8) throw NumericError("populations do not sum to 1", sum - 1.0);
  }
}

EvolveOptions evolve_options(const Scenario& sc, std::uint64_t seed) {
  EvolveOptions o;
  o.repetitions = sc.simulation.repetitions;
  o.samples_per_gate = sc.simulation.samples_per_gate;
  o.fock_levels = sc.simulation.fock_levels;
  o.max_doublings = sc.simulation.max_doublings;
  o.seed = seed;
  return o;
}

std::vector<int> included_modes(const GateConfig& g, int n_modes) {
  if (g.all_modes) {
    std::vector<int> all(n_modes);
    for (int m = 0; m < n_modes; ++m) all[m] = m;
    return all;
  }
  if (!g.include_modes.empty()) {
    std::vector<int> inc = g.include_modes;
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    return inc;
  }
  return {g.mediator_mode};
}

struct BuiltGate {
  GateSpec gate;
  ModeDrive drive;
  std::vector<int> include;
  double phase_before = 0.0;
};

BuiltGate build_gate(const Scenario& sc, const ChainSolution& sol) {
  const GateConfig& g = sc.gate;
  BuiltGate b;
  b.include = included_modes(g, sol.modes.size());
  b.gate = make_pair_gate({g.ion_a, g.ion_b}, g.mediator_mode, g.detuning, g.envelope, g.target_phase,
                          g.sdf_amplitude, sol.modes);
  if (g.crosstalk > 0.0) add_crosstalk(b.gate, sol.chain, sc.beam, g.crosstalk);
  b.phase_before = gate_phase(b.gate, sol.modes, b.include);
  if (g.calibrate) b.gate = calibrate_gate(b.gate, sol.modes, b.include).gate;
  b.drive = make_drive(b.gate, sol.modes, b.include, sc.beam);
  return b;
}

double pair_fidelity(const ModeDrive& d, const Eigen::MatrixXcd& rho, int a, int b) {
  return bell_fidelity(pair_state(rho, d.row_of(a), d.row_of(b)));
}

// ---------------------------------------------------------------- modes

void run_modes(const Scenario& sc, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const int n = sc.trap.ion_count;
  Table pos{{"ion", "position_um"}, {}};
  for (int j = 0; j < n; ++j) pos.add({static_cast<long long>(j + 1), sol.chain.positions[j] * 1e6});
  Table modes{{"mode", "frequency_mhz", "ratio_to_axial", "zero_point_nm"}, {}};
  for (int j = 0; j < n; ++j) modes.columns.push_back("b_" + label(j));
  for (int m = 0; m < n; ++m) {
    std::vector<Cell> row{static_cast<long long>(m), to_mhz(sol.modes.frequencies[m]),
                          sol.modes.frequencies[m] / sc.trap.axial_freq, sol.modes.zero_point[m] * 1e9};
    for (int j = 0; j < n; ++j) row.emplace_back(sol.modes.eigenvectors(j, m));
    modes.add(std::move(row));
  }
  if (out.format() == OutputFormat::csv) {
    out.table("modes", modes);
    out.table("positions", pos);
  } else {
    out.json("modes", Json{{"positions", to_json(pos)}, {"modes", to_json(modes)}});
  }
  out.metric("length_scale_um", sol.chain.length_scale * 1e6);
  out.metric("min_spacing_um", sol.chain.min_spacing() * 1e6);
  for (int m = 0; m < n; ++m) out.metric("mode_" + std::to_string(m) + "_mhz", to_mhz(sol.modes.frequencies[m]));
}

// ---------------------------------------------------------------- beam

double peak_separation(const BeamProfile& beam) {
  if (beam.kind == BeamKind::gaussian) return 0.0;
  // Search in waist units; brent's absolute tolerance is too coarse for metres.
  const double w = beam.waist;
  auto neg = [&](double x) { return -std::abs(field_amplitude(beam, beam.center + x * w)); };
  double best = 0.0, best_v = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double x = 4.0 * i / 400;
    if (neg(x) < best_v) {
      best_v = neg(x);
      best = x;
    }
  }
  const double step = 4.0 / 400;
  auto r = boost::math::tools::brent_find_minima(neg, std::max(best - step, 0.0), best + step, 52);
  return 2.0 * r.first * w;
}

void run_beam(const Scenario& sc, Output& out) {
  const BeamProfile& beam = sc.beam;
  const ProfileConfig& p = sc.profile;
  const auto samples = sample_profile(beam, beam.center + p.z_min, beam.center + p.z_max, p.points);
  Table t{{"z_um", "amplitude", "gradient"}, {}};
  for (const auto& s : samples) t.add({s.z * 1e6, s.amplitude, s.gradient});
  out.table("profile", t);
  double d = p.neighbour_distance;
  if (d <= 0.0) d = sc.trap.axial_freq > 0.0 && sc.trap.ion_count > 1 ? solve_chain(sc.trap).chain.min_spacing() : kDefaultSpacing;
  const double g0 = std::abs(field_gradient(beam, beam.center));
  out.metric("peak_separation_um", peak_separation(beam) * 1e6);
  out.metric("d4sigma_um", d4sigma_diameter(beam) * 1e6);
  out.metric("d4sigma_slit_um", d4sigma_diameter(beam, ProfileAxis::slit) * 1e6);
  out.metric("neighbour_distance_um", d * 1e6);
  out.metric("gradient_crosstalk", g0 > 0.0 ? std::abs(field_gradient(beam, beam.center + d)) / g0 : 0.0);
  out.metric("amplitude_crosstalk", std::abs(field_amplitude(beam, beam.center + d)));
  const CouplingSample c = coupling_sample(beam, beam.center);
  out.metric("carrier_rabi_at_center_khz", to_khz(c.carrier_rabi));
  out.metric("gradient_rabi_at_center_khz", to_khz(c.gradient_rabi_scale));
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(const Scenario& sc, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const SpectrumConfig& s = sc.spectrum;
  SpectrumProbe probe{linspace(s.start, s.stop, s.points), s.duration, s.nbar};
  if (!probe.nbar.empty()) probe.nbar.resize(sol.modes.size(), 0.0);
  BeamProfile beam = sc.beam;
  beam.center += sol.chain.positions[s.ion];
  const auto p1 = simulate_spectrum(sol.chain, sol.modes, beam, s.ion, probe);
  Table t{{"detuning_MHz", "P1"}, {}};
  for (int i = 0; i < s.points; ++i) t.add({to_mhz(probe.detunings[i]), p1[i]});
  out.table("spectrum", t);
  auto at = [&](double det) {
    SpectrumProbe one{{det}, s.duration, probe.nbar};
    return simulate_spectrum(sol.chain, sol.modes, beam, s.ion, one)[0];
  };
  out.metric("carrier_p1", at(0.0));
  for (int m = 0; m < sol.modes.size(); ++m) {
    out.metric("blue_" + std::to_string(m) + "_p1", at(sol.modes.frequencies[m]));
    out.metric("red_" + std::to_string(m) + "_p1", at(-sol.modes.frequencies[m]));
    out.metric("mode_" + std::to_string(m) + "_mhz", to_mhz(sol.modes.frequencies[m]));
  }
}

// ---------------------------------------------------------------- sdf

void run_sdf(const Scenario& sc, std::uint64_t seed, Output& out) {
  const SdfConfig& s = sc.sdf;
  const double tau = s.envelope.total_duration;
  const auto times = linspace(0.0, tau, s.points);
  if (s.experiment == SdfExperiment::bsb_thermometry) {
    std::vector<double> p = sideband_rabi(1.0, s.bsb_rabi, s.nbar, times, Transition::blue, SidebandApprox::lamb_dicke);
    std::vector<double> data = p;
    if (s.shots > 0) {
      std::mt19937_64 rng(seed);
      for (double& x : data) {
        std::binomial_distribution<int> b(s.shots, std::clamp(x, 0.0, 1.0));
        x = static_cast<double>(b(rng)) / s.shots;
      }
    }
    const PhononFit fit = fit_phonon_number(times, data);
    const auto model = sideband_rabi(1.0, fit.omega, fit.nbar, times, Transition::blue, SidebandApprox::lamb_dicke);
    Table t{{"time_us", "P1_data", "P1_fit", "P1_true"}, {}};
    for (std::size_t i = 0; i < times.size(); ++i) t.add({times[i] * 1e6, data[i], model[i], p[i]});
    out.table("thermometry", t);
    out.metric("nbar", fit.nbar);
    out.metric("nbar_error", fit.nbar_error);
    out.metric("bsb_rabi_khz", to_khz(fit.omega));
    out.metric("bsb_rabi_error_khz", to_khz(fit.omega_error));
    out.metric("residual_rms", fit.residual_rms);
    out.metric("nbar_at_boundary", fit.nbar_at_boundary ? 1.0 : 0.0);
    return;
  }
  const ChainSolution sol = solve_chain(sc.trap);
  GateSpec g;
  g.ion_a = g.ion_b = 0;
  g.mediator_mode = 0;
  g.sdf_amplitude = {s.sdf_amplitude};
  g.envelope = s.envelope;
  g.detuning = s.experiment == SdfExperiment::detuned ? s.detuning : 0.0;
  if (s.experiment == SdfExperiment::resonant) g.envelope = PulseEnvelope::flat(tau);
  EvolveOptions o = evolve_options(sc, seed);
  o.repetitions = 1;
  o.samples_per_gate = s.points - 1;
  const SimResult r = detuned_sdf_oscillation(g, sol.modes, sc.noise, o);
  check_guards(r);
  if (s.experiment == SdfExperiment::resonant) {
    Table t{{"time_us", "P1_formula", "P1_master"}, {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < r.time.size(); ++i) {
      const double f = sdf_population(s.sdf_amplitude, r.time[i]);
      worst = std::max(worst, std::abs(f - r.populations[i][1]));
      t.add({r.time[i] * 1e6, f, r.populations[i][1]});
    }
    out.table("sdf", t);
    out.metric("p1_final_formula", sdf_population(s.sdf_amplitude, tau));
    out.metric("p1_final_master", r.populations.back()[1]);
    out.metric("max_deviation", worst);
    return;
  }
  Table t{{"time_us", "P1", "alpha_re", "alpha_im"}, {}};
  double pmax = 0.0;
  for (std::size_t i = 0; i < r.time.size(); ++i) {
    pmax = std::max(pmax, r.populations[i][1]);
    t.add({r.time[i] * 1e6, r.populations[i][1], r.displacement[i][0].real(), r.displacement[i][0].imag()});
  }
  out.table("sdf", t);
  out.metric("p1_max", pmax);
  out.metric("p1_final", r.populations.back()[1]);
  out.metric("loop_period_us", kTwoPi / std::abs(s.detuning) * 1e6);
  out.metric("residual_displacement", std::abs(unit_integrals(g.envelope, g.detuning, tau).displacement) *
                                          s.sdf_amplitude);
}

// ---------------------------------------------------------------- gate / bell

void gate_metrics(const Scenario& sc, const BuiltGate& b, const SimResult& r, Output& out) {
  const int a = sc.gate.ion_a, c = sc.gate.ion_b;
  const Eigen::Matrix4cd pair = pair_state(r.gate_states[0], b.drive.row_of(a), b.drive.row_of(c));
  out.metric("bell_fidelity", bell_fidelity(pair));
  out.metric("p00", pair(0, 0).real());
  out.metric("p11", pair(3, 3).real());
  out.metric("parity_contrast", parity_contrast(pair));
  out.metric("calibrated_sdf_khz", to_khz(std::abs(b.gate.sdf_amplitude[a])));
  out.metric("phase_before_calibration_rad", b.phase_before);
  out.metric("residual_displacement", residual_displacement(b.gate, solve_chain(sc.trap).modes));
  out.metric("max_trace_error", r.trace_log.max_trace_error);
  out.metric("final_purity", r.trace_log.final_purity);
  out.metric("dimension", static_cast<double>(r.trace_log.dimension));
  if (sc.noise.is_closed()) {
    std::vector<double> nbar;
    for (int m : b.drive.modes) nbar.push_back(sc.noise.nbar(m));
    const Eigen::MatrixXcd exact = analytic_gate_state(b.drive, nbar, 1);
    out.metric("analytic_agreement", state_fidelity(exact, r.gate_states[0]));
  }
}

void run_gate(const Scenario& sc, std::uint64_t seed, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const BuiltGate b = build_gate(sc, sol);
  const SimResult r = evolve_master_equation(b.drive, sc.noise, evolve_options(sc, seed));
  check_guards(r);
  if (out.format() == OutputFormat::csv)
    out.table("gate_timeseries", timeseries_table(r));
  else
    out.json("gate", to_json(r));
  gate_metrics(sc, b, r, out);
}

Eigen::Vector4d sample_counts(const Eigen::Vector4d& p, int shots, std::mt19937_64& rng) {
  std::discrete_distribution<int> d(p.data(), p.data() + 4);
  Eigen::Vector4d c = Eigen::Vector4d::Zero();
  for (int s = 0; s < shots; ++s) c[d(rng)] += 1.0;
  return c / shots;
}

void run_bell(const Scenario& sc, std::uint64_t seed, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const BuiltGate b = build_gate(sc, sol);
  EvolveOptions o = evolve_options(sc, seed);
  o.repetitions = 1;
  const SimResult r = evolve_master_equation(b.drive, sc.noise, o);
  check_guards(r);
  const Eigen::Matrix4cd pair = pair_state(r.gate_states[0], b.drive.row_of(sc.gate.ion_a), b.drive.row_of(sc.gate.ion_b));
  const DetectionConfig& dc = sc.detection;
  const DetectionModel m = detection_matrix(dc.f_bright, dc.f_dark, 2);
  std::mt19937_64 rng(seed ^ 0x5eedb011ULL);
  auto measure = [&](const Eigen::Vector4d& truth) {
    Eigen::Vector4d meas = m.full * truth;
    meas = meas.cwiseMax(0.0) / meas.cwiseMax(0.0).sum();
    if (dc.shots > 0) meas = sample_counts(meas, dc.shots, rng);
    Eigen::Vector4d corrected = meas;
    if (dc.correct) corrected = correct_populations(meas, m).populations;
    return std::make_pair(meas, corrected);
  };
  const Eigen::Vector4d pops = pair.diagonal().real();
  const auto [pop_meas, pop_corr] = measure(pops);
  std::vector<double> phases(sc.bell.phases), raw(phases.size()), corr(phases.size()), truth(phases.size());
  Table t{{"phase_rad", "parity_measured", "parity_corrected", "parity_true"}, {}};
  for (int k = 0; k < sc.bell.phases; ++k) {
    phases[k] = kPi * k / sc.bell.phases;
    const Eigen::Vector4d p = analysis_populations(pair, phases[k]);
    const auto [pm, pc] = measure(p);
    raw[k] = parity(pm);
    corr[k] = parity(pc);
    truth[k] = parity(p);
    t.add({phases[k], raw[k], corr[k], truth[k]});
  }
  out.table("parity", t);
  const ParityFit fit_raw = parity_fit(phases, raw);
  const ParityFit fit = parity_fit(phases, corr);
  auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
  out.metric("fidelity", bell_fidelity(clamp01(pop_corr[0]), clamp01(pop_corr[3]), fit.contrast));
  out.metric("fidelity_uncorrected", bell_fidelity(clamp01(pop_meas[0]), clamp01(pop_meas[3]), fit_raw.contrast));
  out.metric("fidelity_true", bell_fidelity(pair));
  out.metric("p00", pop_corr[0]);
  out.metric("p11", pop_corr[3]);
  out.metric("contrast", fit.contrast);
  out.metric("contrast_error", fit.contrast_error);
  out.metric("phase_offset_rad", fit.phase_offset);
  out.metric("detection_fidelity", m.mean_fidelity());
}

// ---------------------------------------------------------------- repeat

void run_repeat(const Scenario& sc, std::uint64_t seed, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const BuiltGate b = build_gate(sc, sol);
  const auto& counts = sc.repeat.gate_counts;
  EvolveOptions o = evolve_options(sc, seed);
  o.repetitions = *std::max_element(counts.begin(), counts.end());
  const SimResult r = evolve_master_equation(b.drive, sc.noise, o);
  check_guards(r);
  const int n = sc.trap.ion_count;
  std::vector<std::pair<int, int>> pairs;
  for (int gap = 1; gap < n; ++gap)
    for (int i = 0; i + gap < n; ++i) pairs.emplace_back(i, i + gap);
  Table t{{"n_gates", "fidelity"}, {}};
  for (auto [i, j] : pairs) t.columns.push_back("parity_" + label(i) + label(j));
  std::vector<double> fid;
  std::map<std::pair<int, int>, std::vector<double>> contrast;
  for (int k : counts) {
    const Eigen::MatrixXcd& rho = r.gate_states[k - 1];
    fid.push_back(pair_fidelity(b.drive, rho, sc.gate.ion_a, sc.gate.ion_b));
    std::vector<Cell> row{static_cast<long long>(k), fid.back()};
    for (auto pr : pairs) {
      const int qa = b.drive.row_of(pr.first), qb = b.drive.row_of(pr.second);
      const double c = qa >= 0 && qb >= 0 ? parity_contrast(pair_state(rho, qa, qb)) : 0.0;
      contrast[pr].push_back(c);
      row.emplace_back(c);
    }
    t.add(std::move(row));
  }
  out.table("repeat", t);
  const std::vector<double> x(counts.begin(), counts.end());
  const GateErrorFit fit = error_per_gate(x, fid);
  out.metric("error_per_gate", fit.linear);
  out.metric("error_per_gate_error", fit.linear_error);
  out.metric("error_per_gate_exponential", fit.exponential);
  out.metric("fidelity_first", fid.front());
  out.metric("fidelity_last", fid.back());
  for (auto& [pr, v] : contrast) {
    if (pr == std::make_pair(std::min(sc.gate.ion_a, sc.gate.ion_b), std::max(sc.gate.ion_a, sc.gate.ion_b))) continue;
    const std::string key = "parity_" + label(pr.first) + label(pr.second);
    out.metric(key + "_first", v.front());
    out.metric(key + "_last", v.back());
  }
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
  SweepPoint point;
  int mediator;
  double fidelity = 0.0;
  double omega = 0.0;
  double mode_freq = 0.0;
  double heating = 0.0;
  int dimension = 0;
  std::vector<int> levels;
};

void run_sweep(const Scenario& sc, std::uint64_t seed, Output& out) {
  std::vector<SweepRow> rows;
  for (const auto& p : sc.sweep.points)
    for (int med : sc.sweep.mediators) rows.push_back(SweepRow{p, med, 0.0, 0.0, 0.0, 0.0, 0, {}});
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.point.ion_count, a.mediator, a.point.axial_freq) <
           std::tie(b.point.ion_count, b.mediator, b.point.axial_freq);
  });
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    SweepRow& row = rows[i];
    const SweepPoint& p = row.point;
    TrapConfig trap = sc.trap;
    trap.ion_count = p.ion_count;
    trap.axial_freq = p.axial_freq;
    const ChainSolution sol = solve_chain(trap);
    const SweepGate& sg = row.mediator == 0 ? sc.sweep.com : sc.sweep.breathing;
    GateSpec g = make_pair_gate({0, p.ion_count - 1}, row.mediator, sg.detuning, sg.envelope, kPi / 4.0, khz(2.5),
                                sol.modes);
    if (sc.sweep.crosstalk > 0.0) add_crosstalk(g, sol.chain, sc.beam, sc.sweep.crosstalk);
    const int med = row.mediator;
    std::span<const int> inc(&med, 1);
    const GateSpec cal = calibrate_gate(g, sol.modes, inc).gate;
    const ModeDrive drive = make_drive(cal, sol.modes, inc, sc.beam);
    NoiseModel noise = sc.noise;
    noise.heating_rates.assign(sol.modes.size(), 0.0);
    noise.heating_rates[0] = p.heating_com;
    if (sol.modes.size() > 1) noise.heating_rates[1] = p.heating_breathing;
    noise.initial_nbar.assign(sol.modes.size(), 0.0);
    noise.initial_nbar[0] = p.nbar_com;
    if (sol.modes.size() > 1) noise.initial_nbar[1] = p.nbar_breathing;
    EvolveOptions o = evolve_options(sc, seed);
    o.repetitions = 1;
    o.samples_per_gate = 1;
    const SimResult r = evolve_master_equation(drive, noise, o);
    check_guards(r);
    row.fidelity = pair_fidelity(drive, r.qubit_state, 0, p.ion_count - 1);
    row.omega = std::abs(cal.sdf_amplitude[0]);
    row.mode_freq = sol.modes.frequencies[row.mediator];
    row.heating = noise.heating_rates[row.mediator];
    row.dimension = r.trace_log.dimension;
    row.levels = r.trace_log.fock_levels;
  });
  Table t{{"ion_count", "mediator", "axial_freq_mhz", "mode_freq_mhz", "heating_quanta_per_s", "initial_nbar",
           "fidelity", "calibrated_sdf_khz", "fock_levels", "dimension"},
          {}};
  for (const auto& r : rows) {
    const double nbar = r.mediator == 0 ? r.point.nbar_com : r.point.nbar_breathing;
    const std::string name = r.mediator == 0 ? "com" : "breathing";
    t.add({static_cast<long long>(r.point.ion_count), name, to_mhz(r.point.axial_freq), to_mhz(r.mode_freq),
           r.heating, nbar, r.fidelity, to_khz(r.omega), static_cast<long long>(r.levels.empty() ? 0 : r.levels[0]),
           static_cast<long long>(r.dimension)});
    out.metric("fidelity_" + name + "_" + std::to_string(r.point.ion_count), r.fidelity);
  }
  out.table("sweep", t);
}

// ---------------------------------------------------------------- budget

void run_budget(const Scenario& sc, std::uint64_t seed, Output& out) {
  const ChainSolution sol = solve_chain(sc.trap);
  const GateConfig& g = sc.gate;
  BudgetConfig c;
  c.gate = make_pair_gate({g.ion_a, g.ion_b}, g.mediator_mode, g.detuning, g.envelope, g.target_phase,
                          g.sdf_amplitude, sol.modes);
  c.beam = sc.beam;
  c.crosstalk = g.crosstalk;
  c.noise = sc.noise;
  c.include_modes = included_modes(g, sol.modes.size());
  c.gate_counts = sc.budget.gate_counts;
  c.full_pointing_sampling = sc.budget.full_pointing_sampling;
  c.full_pointing_shots = sc.budget.full_pointing_shots;
  c.options = evolve_options(sc, seed);
  c.options.samples_per_gate = 1;
  const ErrorBudget b = build_error_budget(sol, c);
  const auto& ref = sc.budget.reference;
  Table t{{"source", "per_gate_error", "single_gate_error", "reference", "enabled"}, {}};
  auto ref_of = [&](const std::string& k) {
    auto it = ref.find(k);
    return it == ref.end() ? std::nan("") : it->second;
  };
  for (const auto& e : b.entries) {
    const std::string k(to_string(e.source));
    t.add({k, e.error, e.single_gate, ref_of(k), static_cast<long long>(e.enabled)});
    out.metric(k, e.error);
    out.metric(k + "_single_gate", e.single_gate);
  }
  t.add({std::string("sum"), b.sum, std::nan(""), sc.budget.reference_total.value_or(std::nan("")), 1LL});
  t.add({std::string("full_model"), b.full_model, b.full_single_gate, std::nan(""), 1LL});
  if (out.format() == OutputFormat::csv) {
    out.table("budget", t);
    Table f{{"n_gates", "ideal"}, {}};
    for (const auto& e : b.entries)
      if (e.enabled) f.columns.push_back(std::string(to_string(e.source)));
    f.columns.push_back("full_model");
    for (std::size_t i = 0; i < b.gate_counts.size(); ++i) {
      std::vector<Cell> row{static_cast<long long>(b.gate_counts[i]), b.ideal_fidelity[i]};
      for (const auto& e : b.entries)
        if (e.enabled) row.emplace_back(e.fidelity[i]);
      row.emplace_back(b.full_fidelity[i]);
      f.add(std::move(row));
    }
    out.table("budget_fidelity", f);
  } else {
    Json j = to_json(b);
    if (!ref.empty()) j["reference"] = ref;
    if (sc.budget.reference_total) j["reference_total"] = *sc.budget.reference_total;
    out.json("budget", j);
  }
  out.metric("sum", b.sum);
  out.metric("full_model", b.full_model);
  out.metric("full_single_gate", b.full_single_gate);
  out.metric("gap", b.gap);
  out.metric("calibrated_sdf_khz", to_khz(b.calibrated_omega));
}

}  // namespace

Json to_json(const RunReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["name"] = r.name;
  j["version"] = r.version;
  j["git"] = r.git;
  j["wall_time_s"] = round_sig(r.wall_time);
  if (r.seed) j["seed"] = *r.seed;
  j["workers"] = r.workers;
  j["kernels"] = r.kernels;
  j["manifest"] = r.manifest;
  j["metrics"] = r.metrics;
  j["config"] = r.config;
  return j;
}

RunReport run(const Scenario& scenario, const RunOptions& options) {
  Scenario sc = scenario;
  if (options.seed) sc.seed = options.seed;
  RunReport report;
  report.kind = std::string(to_string(sc.kind));
  report.name = sc.name;
  report.config = emit_config(sc);
  report.version = version_string();
  report.git = HGTRAP_GIT;
  report.seed = sc.seed;
  report.workers = worker_count();
  report.kernels = std::string(kernels::active().name);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = sc.seed.value_or(0);
  Output out(options, report);
  try {
    if (sc.stochastic() && !sc.seed) throw InvalidConfig("a seed is required for this scenario");
    switch (sc.kind) {
      case ScenarioKind::modes: run_modes(sc, out); break;
      case ScenarioKind::beam_profile: run_beam(sc, out); break;
      case ScenarioKind::spectrum: run_spectrum(sc, out); break;
      case ScenarioKind::sdf_single: run_sdf(sc, seed, out); break;
      case ScenarioKind::gate: run_gate(sc, seed, out); break;
      case ScenarioKind::bell: run_bell(sc, seed, out); break;
      case ScenarioKind::repeat_gates: run_repeat(sc, seed, out); break;
      case ScenarioKind::chain_sweep: run_sweep(sc, seed, out); break;
      case ScenarioKind::budget: run_budget(sc, seed, out); break;
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.write) {
      write_text(options.out_dir / "report.json", to_json(report).dump(2) + "\n");
      for (const auto& f : report.manifest)
        if (!std::filesystem::exists(options.out_dir / f)) throw std::runtime_error("missing output " + f);
    }
  } catch (...) {
    std::string ctx = "scenario " + report.kind;
    if (!sc.name.empty()) ctx += " '" + sc.name + "'";
    std::throw_with_nested(ScenarioError(ctx + " failed"));
  }
  return report;
}

}  // namespace hgtrap
