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


#include "hgtrap/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "hgtrap/budget.hpp"

namespace hgtrap {

namespace {

constexpr std::pair<ScenarioKind, std::string_view> kKinds[] = {
    {ScenarioKind::modes, "modes"},         {ScenarioKind::beam_profile, "beam_profile"},
    {ScenarioKind::spectrum, "spectrum"},   {ScenarioKind::sdf_single, "sdf_single"},
    {ScenarioKind::gate, "gate"},           {ScenarioKind::bell, "bell"},
    {ScenarioKind::repeat_gates, "repeat_gates"}, {ScenarioKind::chain_sweep, "chain_sweep"},
    {ScenarioKind::budget, "budget"}};

constexpr std::pair<ScenarioKind, std::string_view> kSubcommands[] = {
    {ScenarioKind::modes, "modes"},   {ScenarioKind::beam_profile, "beam"},  {ScenarioKind::spectrum, "spectrum"},
    {ScenarioKind::sdf_single, "sdf"}, {ScenarioKind::gate, "gate"},          {ScenarioKind::bell, "bell"},
    {ScenarioKind::repeat_gates, "repeat"}, {ScenarioKind::chain_sweep, "sweep"}, {ScenarioKind::budget, "budget"}};

enum class Dim { frequency, time, length, rate, mass, angle };

struct Unit {
  std::string_view suffix;
  Dim dim;
  double scale;
};

constexpr Unit kUnits[] = {
    {"mhz", Dim::frequency, kTwoPi * 1e6}, {"khz", Dim::frequency, kTwoPi * 1e3}, {"hz", Dim::frequency, kTwoPi},
    {"us", Dim::time, 1e-6},               {"ms", Dim::time, 1e-3},               {"s", Dim::time, 1.0},
    {"um", Dim::length, 1e-6},             {"nm", Dim::length, 1e-9},             {"m", Dim::length, 1.0},
    {"quanta_per_s", Dim::rate, 1.0},      {"amu", Dim::mass, kAtomicMassUnit},   {"rad", Dim::angle, 1.0},
    {"pi", Dim::angle, kPi}};

std::string_view dim_name(Dim d) {
  switch (d) {
    case Dim::frequency: return "a frequency (_mhz, _khz, _hz; cycles, 2 pi applied)";
    case Dim::time: return "a time (_us, _ms, _s)";
    case Dim::length: return "a length (_um, _nm, _m)";
    case Dim::rate: return "a rate (_quanta_per_s)";
    case Dim::mass: return "a mass (_amu)";
    case Dim::angle: return "an angle (_rad, _pi)";
  }
  return "";
}

// Splits "base_unit" on the longest known unit suffix.
std::optional<std::pair<std::string, const Unit*>> split_unit(const std::string& key) {
  const Unit* best = nullptr;
  for (const Unit& u : kUnits) {
    const std::size_t n = u.suffix.size() + 1;
    if (key.size() > n && key.compare(key.size() - n, n, "_" + std::string(u.suffix)) == 0 &&
        (!best || u.suffix.size() > best->suffix.size()))
      best = &u;
  }
  if (!best) return std::nullopt;
  return std::make_pair(key.substr(0, key.size() - best->suffix.size() - 1), best);
}

using Errors = std::vector<std::string>;

class Section {
 public:
  Section(YAML::Node node, std::string path, Errors& errors) : node_(node), path_(std::move(path)), errors_(&errors) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) error("expected a mapping");
  }

  bool present() const { return node_ && node_.IsMap(); }
  const std::string& path() const { return path_; }
  void error(const std::string& msg) const { errors_->push_back(path_ + ": " + msg); }
  std::string field(const std::string& key) const { return path_ + "." + key; }
  void field_error(const std::string& key, const std::string& msg) const {
    errors_->push_back(field(key) + ": " + msg);
  }

  std::optional<YAML::Node> raw(const std::string& key) {
    if (!present()) return std::nullopt;
    YAML::Node v = std::as_const(node_)[key];
    if (!v) return std::nullopt;
    used_.insert(key);
    return v;
  }

  template <class T>
  std::optional<T> get(const std::string& key) {
    auto v = raw(key);
    if (!v) return std::nullopt;
    try {
      return v->as<T>();
    } catch (const YAML::Exception&) {
      field_error(key, "wrong value type");
      return std::nullopt;
    }
  }

  template <class T>
  T get_or(const std::string& key, T fallback) {
    return get<T>(key).value_or(fallback);
  }

  template <class T>
  std::optional<T> require(const std::string& key) {
    auto v = get<T>(key);
    if (!v && !has(key)) field_error(key, "missing field");
    return v;
  }

  bool has(const std::string& key) const { return present() && std::as_const(node_)[key]; }

  // Finds the key carrying quantity `base` and converts it to SI.
  std::optional<YAML::Node> quantity_node(const std::string& base, Dim dim, double& scale, std::string& key_out) {
    if (!present()) return std::nullopt;
    std::optional<YAML::Node> found;
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      if (key == base) {
        used_.insert(key);
        field_error(key, "missing unit suffix; expected " + std::string(dim_name(dim)));
        continue;
      }
      auto split = split_unit(key);
      if (!split || split->first != base) continue;
      used_.insert(key);
      if (split->second->dim != dim) {
        field_error(key, "unit mismatch; expected " + std::string(dim_name(dim)));
        continue;
      }
      if (found) {
        field_error(key, "quantity given twice");
        continue;
      }
      found = it->second;
      scale = split->second->scale;
      key_out = key;
    }
    return found;
  }

  std::optional<double> quantity(const std::string& base, Dim dim) {
    double scale = 1.0;
    std::string key;
    auto v = quantity_node(base, dim, scale, key);
    if (!v) return std::nullopt;
    try {
      return v->as<double>() * scale;
    } catch (const YAML::Exception&) {
      field_error(key, "expected a number");
      return std::nullopt;
    }
  }

  std::optional<double> require_quantity(const std::string& base, Dim dim) {
    const std::size_t before = errors_->size();
    auto v = quantity(base, dim);
    if (!v && errors_->size() == before) field_error(base, "missing field (" + std::string(dim_name(dim)) + ")");
    return v;
  }

  std::optional<std::vector<double>> quantity_list(const std::string& base, Dim dim) {
    double scale = 1.0;
    std::string key;
    auto v = quantity_node(base, dim, scale, key);
    if (!v) return std::nullopt;
    try {
      auto values = v->as<std::vector<double>>();
      for (double& x : values) x *= scale;
      return values;
    } catch (const YAML::Exception&) {
      field_error(key, "expected a list of numbers");
      return std::nullopt;
    }
  }

  Section child(const std::string& key, Errors& errors) {
    auto v = raw(key);
    return Section(v ? *v : YAML::Node(), field(key), errors);
  }

  void finish() const {
    if (!present()) return;
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      const std::string key = it->first.as<std::string>();
      if (!used_.count(key)) field_error(key, "unknown key");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  Errors* errors_;
  std::set<std::string> used_;
};

void check(bool ok, const Section& s, const std::string& key, const std::string& msg) {
  if (!ok) s.field_error(key, msg);
}

template <class Fn>
void library_check(const Section& s, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    s.error(e.what());
  }
}

void parse_trap(Section s, TrapConfig& trap) {
  if (auto n = s.require<int>("ion_count")) trap.ion_count = *n;
  if (auto f = s.require_quantity("axial_freq", Dim::frequency)) trap.axial_freq = *f;
  if (auto m = s.quantity("ion_mass", Dim::mass)) trap.ion_mass = *m;
  if (auto w = s.quantity("qubit_wavelength", Dim::length)) trap.qubit_wavelength = *w;
  check(trap.ion_count >= 1 && trap.ion_count <= 12, s, "ion_count", "must be in [1, 12]");
  check(trap.axial_freq > 0.0, s, "axial_freq", "must be positive");
  check(trap.ion_mass > 0.0, s, "ion_mass", "must be positive");
  s.finish();
}

void parse_beam(Section s, BeamProfile& beam) {
  if (auto k = s.get<std::string>("kind")) {
    try {
      beam.kind = parse_beam_kind(*k);
    } catch (const std::exception&) {
      s.field_error("kind", "expected gaussian, hg01_ideal or zero_pi");
    }
  }
  if (auto w = s.quantity("waist", Dim::length)) beam.waist = *w;
  if (auto c = s.quantity("center", Dim::length)) beam.center = *c;
  if (auto o = s.quantity("omega_ref", Dim::frequency)) beam.omega_ref = *o;
  check(beam.waist > 0.0, s, "waist", "must be positive");
  check(beam.omega_ref >= 0.0, s, "omega_ref", "must be non-negative");
  s.finish();
}

// Mode given as "com", "breathing" or a 0-based index.
std::optional<int> parse_mode(Section& s, const std::string& key) {
  auto v = s.raw(key);
  if (!v) return std::nullopt;
  const std::string text = v->as<std::string>();
  if (text == "com") return 0;
  if (text == "breathing") return 1;
  try {
    return v->as<int>();
  } catch (const YAML::Exception&) {
    s.field_error(key, "expected com, breathing or a mode index");
    return std::nullopt;
  }
}

PulseEnvelope parse_envelope(Section& s, bool required) {
  PulseEnvelope env;
  auto d = required ? s.require_quantity("duration", Dim::time) : s.quantity("duration", Dim::time);
  if (d) env.total_duration = *d;
  if (auto r = s.quantity("ramp", Dim::time)) env.ramp_duration = *r;
  env.shape = env.ramp_duration > 0.0 ? EnvelopeShape::sin2_ramps : EnvelopeShape::flat;
  if (auto sh = s.get<std::string>("shape")) {
    try {
      env.shape = parse_envelope_shape(*sh);
    } catch (const std::exception&) {
      s.field_error("shape", "expected flat or sin2_ramps");
    }
  }
  check(env.total_duration >= 0.0, s, "duration", "must be non-negative");
  check(env.ramp_duration >= 0.0 && 2.0 * env.ramp_duration <= env.total_duration, s, "ramp",
        "must satisfy 0 <= 2 ramp <= duration");
  return env;
}

void parse_gate(Section s, GateConfig& g, int n_ions) {
  if (auto p = s.require<std::vector<int>>("pair")) {
    if (p->size() != 2) {
      s.field_error("pair", "expected two ion labels");
    } else {
      g.ion_a = (*p)[0] - 1;
      g.ion_b = (*p)[1] - 1;
      check(g.ion_a >= 0 && g.ion_a < n_ions && g.ion_b >= 0 && g.ion_b < n_ions, s, "pair",
            "ion labels run from 1 to ion_count");
      check(g.ion_a != g.ion_b, s, "pair", "ions must differ");
    }
  }
  if (auto m = parse_mode(s, "mediator")) g.mediator_mode = *m;
  check(g.mediator_mode >= 0 && g.mediator_mode < n_ions, s, "mediator", "no such mode");
  if (auto d = s.require_quantity("detuning", Dim::frequency)) g.detuning = *d;
  check(g.detuning != 0.0, s, "detuning", "must be non-zero");
  g.envelope = parse_envelope(s, true);
  check(g.envelope.total_duration > 0.0, s, "duration", "must be positive");
  if (auto p = s.quantity("target_phase", Dim::angle)) g.target_phase = *p;
  check(g.target_phase > -kPi && g.target_phase <= kPi && g.target_phase != 0.0, s, "target_phase",
        "must be non-zero and in (-pi, pi]");
  if (auto a = s.require_quantity("sdf", Dim::frequency)) g.sdf_amplitude = *a;
  check(g.sdf_amplitude > 0.0, s, "sdf", "must be positive");
  g.calibrate = s.get_or<bool>("calibrate", true);
  g.crosstalk = s.get_or<double>("crosstalk", 0.0);
  check(g.crosstalk >= 0.0 && g.crosstalk < 1.0, s, "crosstalk", "must be in [0, 1)");
  if (auto inc = s.raw("include_modes")) {
    if (inc->IsScalar()) {
      const std::string v = inc->as<std::string>();
      if (v == "all")
        g.all_modes = true;
      else if (v != "mediator")
        s.field_error("include_modes", "expected mediator, all or a list of mode indices");
    } else {
      try {
        g.include_modes = inc->as<std::vector<int>>();
      } catch (const YAML::Exception&) {
        s.field_error("include_modes", "expected a list of mode indices");
      }
      for (int m : g.include_modes) check(m >= 0 && m < n_ions, s, "include_modes", "no such mode");
    }
  }
  s.finish();
}

void parse_noise(Section s, NoiseModel& n, int n_modes) {
  if (auto t = s.quantity("t2", Dim::time)) n.qubit_t2 = *t;
  check(n.qubit_t2 >= 0.0, s, "t2", "must be non-negative (0 disables)");
  if (auto d = s.get<std::string>("dephasing")) {
    try {
      n.dephasing = parse_dephasing_model(*d);
    } catch (const std::exception&) {
      s.field_error("dephasing", "expected correlated or independent");
    }
  }
  if (auto h = s.quantity_list("heating", Dim::rate)) {
    n.heating_rates = *h;
    for (std::size_t i = 0; i < h->size(); ++i)
      if ((*h)[i] < 0.0) s.field_error("heating_quanta_per_s[" + std::to_string(i) + "]", "must be >= 0");
    check(static_cast<int>(h->size()) <= n_modes, s, "heating_quanta_per_s", "more entries than modes");
  }
  if (auto b = s.get<std::string>("heating_bath")) {
    try {
      n.heating_bath = parse_heating_bath(*b);
    } catch (const std::exception&) {
      s.field_error("heating_bath", "expected up_down or up_only");
    }
  }
  if (auto l = s.quantity("lifetime", Dim::time)) n.metastable_lifetime = *l;
  check(n.metastable_lifetime >= 0.0, s, "lifetime", "must be non-negative (0 disables)");
  if (auto p = s.quantity("pointing_sigma", Dim::length)) n.pointing_sigma = *p;
  check(n.pointing_sigma >= 0.0, s, "pointing_sigma", "must be non-negative");
  n.pointing_shots = s.get_or<int>("pointing_shots", n.pointing_shots);
  check(n.pointing_shots >= 1, s, "pointing_shots", "must be positive");
  if (auto p = s.get<std::string>("pointing_sampling")) {
    try {
      n.pointing_sampling = parse_pointing_sampling(*p);
    } catch (const std::exception&) {
      s.field_error("pointing_sampling", "expected monte_carlo or quadrature");
    }
  }
  if (auto nb = s.get<std::vector<double>>("initial_nbar")) {
    n.initial_nbar = *nb;
    for (std::size_t i = 0; i < nb->size(); ++i)
      if ((*nb)[i] < 0.0) s.field_error("initial_nbar[" + std::to_string(i) + "]", "must be >= 0");
    check(static_cast<int>(nb->size()) <= n_modes, s, "initial_nbar", "more entries than modes");
  }
  if (n.pointing_sampling == PointingSampling::quadrature && n.pointing_shots > 12)
    s.field_error("pointing_shots", "quadrature takes at most 12 nodes per beam");
  s.finish();
}

void parse_simulation(Section s, SimulationConfig& c) {
  c.repetitions = s.get_or<int>("repetitions", c.repetitions);
  c.samples_per_gate = s.get_or<int>("samples_per_gate", c.samples_per_gate);
  if (auto f = s.raw("fock_levels")) {
    if (f->IsScalar())
      c.fock_levels = {s.get_or<int>("fock_levels", 0)};
    else
      c.fock_levels = s.get_or<std::vector<int>>("fock_levels", c.fock_levels);
  }
  c.max_doublings = s.get_or<int>("max_doublings", c.max_doublings);
  check(c.repetitions >= 1, s, "repetitions", "must be positive");
  check(c.samples_per_gate >= 1, s, "samples_per_gate", "must be positive");
  check(c.max_doublings >= 0, s, "max_doublings", "must be non-negative");
  for (int l : c.fock_levels) check(l >= 3, s, "fock_levels", "need at least 3 levels per mode");
  s.finish();
}

void parse_detection(Section s, DetectionConfig& d) {
  d.f_bright = s.get_or<double>("f_bright", d.f_bright);
  d.f_dark = s.get_or<double>("f_dark", d.f_dark);
  d.correct = s.get_or<bool>("correct", d.correct);
  d.shots = s.get_or<int>("shots", d.shots);
  check(d.f_bright > 0.5 && d.f_bright <= 1.0, s, "f_bright", "must be in (0.5, 1]");
  check(d.f_dark > 0.5 && d.f_dark <= 1.0, s, "f_dark", "must be in (0.5, 1]");
  check(d.shots >= 0, s, "shots", "must be non-negative");
  s.finish();
}

void parse_profile(Section s, ProfileConfig& p) {
  if (auto v = s.quantity("z_min", Dim::length)) p.z_min = *v;
  if (auto v = s.quantity("z_max", Dim::length)) p.z_max = *v;
  p.points = s.get_or<int>("points", p.points);
  if (auto v = s.quantity("neighbour_distance", Dim::length)) p.neighbour_distance = *v;
  check(p.z_max > p.z_min, s, "z_max", "must exceed z_min");
  check(p.points >= 2, s, "points", "need at least 2 points");
  check(p.neighbour_distance >= 0.0, s, "neighbour_distance", "must be non-negative");
  s.finish();
}

void parse_spectrum(Section s, SpectrumConfig& c, int n_ions) {
  if (auto i = s.require<int>("ion")) c.ion = *i - 1;
  check(c.ion >= 0 && c.ion < n_ions, s, "ion", "ion labels run from 1 to ion_count");
  if (auto v = s.require_quantity("start", Dim::frequency)) c.start = *v;
  if (auto v = s.require_quantity("stop", Dim::frequency)) c.stop = *v;
  if (auto v = s.require<int>("points")) c.points = *v;
  if (auto v = s.require_quantity("duration", Dim::time)) c.duration = *v;
  c.nbar = s.get_or<std::vector<double>>("nbar", {});
  check(c.stop > c.start, s, "stop", "must exceed start");
  check(c.points >= 2, s, "points", "need at least 2 points");
  check(c.duration > 0.0, s, "duration", "must be positive");
  for (double n : c.nbar) check(n >= 0.0, s, "nbar", "must be >= 0");
  s.finish();
}

void parse_sdf(Section s, SdfConfig& c) {
  if (auto e = s.require<std::string>("experiment")) {
    if (*e == "detuned")
      c.experiment = SdfExperiment::detuned;
    else if (*e == "resonant")
      c.experiment = SdfExperiment::resonant;
    else if (*e == "bsb_thermometry")
      c.experiment = SdfExperiment::bsb_thermometry;
    else
      s.field_error("experiment", "expected detuned, resonant or bsb_thermometry");
  }
  c.envelope = parse_envelope(s, true);
  check(c.envelope.total_duration > 0.0, s, "duration", "must be positive");
  c.points = s.get_or<int>("points", c.points);
  check(c.points >= 2, s, "points", "need at least 2 points");
  switch (c.experiment) {
    case SdfExperiment::detuned:
      if (auto v = s.require_quantity("sdf", Dim::frequency)) c.sdf_amplitude = *v;
      if (auto v = s.require_quantity("detuning", Dim::frequency)) c.detuning = *v;
      check(c.sdf_amplitude >= 0.0, s, "sdf", "must be non-negative");
      check(c.detuning != 0.0, s, "detuning", "must be non-zero");
      break;
    case SdfExperiment::resonant:
      if (auto v = s.require_quantity("sdf", Dim::frequency)) c.sdf_amplitude = *v;
      check(c.sdf_amplitude >= 0.0, s, "sdf", "must be non-negative");
      break;
    case SdfExperiment::bsb_thermometry:
      if (auto v = s.require_quantity("bsb_rabi", Dim::frequency)) c.bsb_rabi = *v;
      c.nbar = s.get_or<double>("nbar", 0.0);
      c.shots = s.get_or<int>("shots", 0);
      check(c.bsb_rabi > 0.0, s, "bsb_rabi", "must be positive");
      check(c.nbar >= 0.0, s, "nbar", "must be >= 0");
      check(c.shots >= 0, s, "shots", "must be non-negative");
      break;
  }
  s.finish();
}

std::vector<int> parse_counts(Section& s, const std::string& key, std::vector<int> fallback) {
  auto v = s.get<std::vector<int>>(key);
  if (!v) return fallback;
  check(v->size() >= 3, s, key, "need at least three gate counts");
  for (int n : *v) check(n >= 1 && n % 2 == 1, s, key, "gate counts must be odd and positive");
  return *v;
}

SweepGate parse_sweep_gate(Section s) {
  SweepGate g;
  if (auto d = s.require_quantity("detuning", Dim::frequency)) g.detuning = *d;
  g.envelope = parse_envelope(s, true);
  check(g.envelope.total_duration > 0.0, s, "duration", "must be positive");
  s.finish();
  return g;
}

void parse_sweep(Section s, SweepConfig& c, Errors& errors) {
  if (auto pts = s.raw("points")) {
    if (!pts->IsSequence() || pts->size() == 0) s.field_error("points", "expected a non-empty list");
    for (std::size_t i = 0; pts->IsSequence() && i < pts->size(); ++i) {
      Section p((*pts)[i], s.field("points[" + std::to_string(i) + "]"), errors);
      SweepPoint sp;
      if (auto n = p.require<int>("ion_count")) sp.ion_count = *n;
      if (auto f = p.require_quantity("axial_freq", Dim::frequency)) sp.axial_freq = *f;
      sp.heating_com = p.quantity("heating_com", Dim::rate).value_or(0.0);
      sp.heating_breathing = p.quantity("heating_breathing", Dim::rate).value_or(0.0);
      sp.nbar_com = p.get_or<double>("nbar_com", 0.0);
      sp.nbar_breathing = p.get_or<double>("nbar_breathing", 0.0);
      check(sp.ion_count >= 2 && sp.ion_count <= 12, p, "ion_count", "must be in [2, 12]");
      check(sp.axial_freq > 0.0, p, "axial_freq", "must be positive");
      check(sp.heating_com >= 0.0, p, "heating_com_quanta_per_s", "must be >= 0");
      check(sp.heating_breathing >= 0.0, p, "heating_breathing_quanta_per_s", "must be >= 0");
      check(sp.nbar_com >= 0.0 && sp.nbar_breathing >= 0.0, p, "nbar_com", "must be >= 0");
      p.finish();
      c.points.push_back(sp);
    }
  } else {
    s.field_error("points", "missing field");
  }
  if (auto m = s.get<std::vector<std::string>>("mediators")) {
    c.mediators.clear();
    for (const auto& name : *m) {
      if (name == "com")
        c.mediators.push_back(0);
      else if (name == "breathing")
        c.mediators.push_back(1);
      else
        s.field_error("mediators", "expected com and/or breathing");
    }
  }
  const bool com = std::count(c.mediators.begin(), c.mediators.end(), 0) > 0;
  const bool br = std::count(c.mediators.begin(), c.mediators.end(), 1) > 0;
  Section cg = s.child("com_gate", errors);
  Section bg = s.child("breathing_gate", errors);
  if (com) {
    if (cg.present())
      c.com = parse_sweep_gate(cg);
    else
      s.field_error("com_gate", "missing field");
  }
  if (br) {
    if (bg.present())
      c.breathing = parse_sweep_gate(bg);
    else
      s.field_error("breathing_gate", "missing field");
  }
  c.crosstalk = s.get_or<double>("crosstalk", 0.0);
  check(c.crosstalk >= 0.0 && c.crosstalk < 1.0, s, "crosstalk", "must be in [0, 1)");
  s.finish();
}

void parse_budget(Section s, BudgetSection& b) {
  b.gate_counts = parse_counts(s, "gate_counts", b.gate_counts);
  if (auto p = s.get<std::string>("full_pointing_sampling")) {
    try {
      b.full_pointing_sampling = parse_pointing_sampling(*p);
    } catch (const std::exception&) {
      s.field_error("full_pointing_sampling", "expected monte_carlo or quadrature");
    }
  }
  b.full_pointing_shots = s.get_or<int>("full_pointing_shots", b.full_pointing_shots);
  check(b.full_pointing_shots >= 1, s, "full_pointing_shots", "must be positive");
  if (auto r = s.get<std::map<std::string, double>>("reference")) {
    for (const auto& [k, v] : *r) {
      try {
        parse_error_source(k);
      } catch (const std::exception&) {
        s.field_error("reference." + k, "unknown error source");
      }
      check(v >= 0.0, s, "reference." + k, "must be >= 0");
    }
    b.reference = *r;
  }
  b.reference_total = s.get<double>("reference_total");
  s.finish();
}

struct Needs {
  bool trap, beam, gate, noise, simulation, detection, profile, spectrum, sdf, bell, repeat, sweep, budget;
  bool trap_required, beam_required;
};

Needs needs_of(ScenarioKind k) {
  Needs n{};
  switch (k) {
    case ScenarioKind::modes: n.trap = n.trap_required = true; break;
    case ScenarioKind::beam_profile: n.beam = n.beam_required = n.trap = n.profile = true; break;
    case ScenarioKind::spectrum: n.trap = n.trap_required = n.beam = n.beam_required = n.spectrum = true; break;
    case ScenarioKind::sdf_single: n.trap = n.trap_required = n.sdf = n.noise = n.simulation = true; break;
    case ScenarioKind::gate:
      n.trap = n.trap_required = n.beam = n.gate = n.noise = n.simulation = true;
      break;
    case ScenarioKind::bell:
      n.trap = n.trap_required = n.beam = n.gate = n.noise = n.simulation = n.detection = n.bell = true;
      break;
    case ScenarioKind::repeat_gates:
      n.trap = n.trap_required = n.beam = n.gate = n.noise = n.simulation = n.repeat = true;
      break;
    case ScenarioKind::chain_sweep: n.beam = n.noise = n.simulation = n.sweep = true; break;
    case ScenarioKind::budget:
      n.trap = n.trap_required = n.beam = n.gate = n.noise = n.simulation = n.budget = true;
      break;
  }
  return n;
}

Scenario parse_node(const YAML::Node& root) {
  Errors errors;
  if (!root || !root.IsMap()) throw ConfigError({"config: expected a mapping at top level"});
  Section top(root, "config", errors);
  Scenario sc;
  if (auto k = top.require<std::string>("kind")) {
    try {
      sc.kind = parse_scenario_kind(*k);
    } catch (const std::exception&) {
      top.field_error("kind", "unknown scenario kind '" + *k + "'");
      throw ConfigError(errors);
    }
  } else {
    throw ConfigError(errors);
  }
  sc.name = top.get_or<std::string>("name", "");
  if (auto s = top.get<long long>("seed")) {
    if (*s < 0)
      top.field_error("seed", "must be non-negative");
    else
      sc.seed = static_cast<std::uint64_t>(*s);
  }
  const Needs need = needs_of(sc.kind);
  const std::string kind(to_string(sc.kind));
  auto section = [&](const std::string& key, bool wanted, bool required) {
    Section s = top.child(key, errors);
    if (s.present() && !wanted) s.error("not used by kind " + kind);
    if (!s.present() && required) top.field_error(key, "missing section");
    return s;
  };

  Section trap = section("trap", need.trap, need.trap_required);
  if (trap.present()) parse_trap(trap, sc.trap);
  const int n_ions = trap.present() ? sc.trap.ion_count : 1;

  Section beam = section("beam", need.beam, need.beam_required);
  if (beam.present()) parse_beam(beam, sc.beam);
  Section gate = section("gate", need.gate, need.gate);
  if (gate.present()) parse_gate(gate, sc.gate, n_ions);
  Section noise = section("noise", need.noise, sc.kind == ScenarioKind::budget);
  if (noise.present()) parse_noise(noise, sc.noise, sc.kind == ScenarioKind::chain_sweep ? 12 : n_ions);
  Section sim = section("simulation", need.simulation, false);
  if (sim.present()) parse_simulation(sim, sc.simulation);
  Section det = section("detection", need.detection, false);
  if (det.present()) parse_detection(det, sc.detection);
  Section prof = section("profile", need.profile, false);
  if (prof.present()) parse_profile(prof, sc.profile);
  Section spec = section("spectrum", need.spectrum, need.spectrum);
  if (spec.present()) parse_spectrum(spec, sc.spectrum, n_ions);
  Section sdf = section("sdf", need.sdf, need.sdf);
  if (sdf.present()) parse_sdf(sdf, sc.sdf);
  Section bell = section("bell", need.bell, false);
  if (bell.present()) {
    sc.bell.phases = bell.get_or<int>("phases", sc.bell.phases);
    check(sc.bell.phases >= 8, bell, "phases", "need at least 8 phases");
    bell.finish();
  }
  Section rep = section("repeat", need.repeat, false);
  if (rep.present()) {
    sc.repeat.gate_counts = parse_counts(rep, "gate_counts", sc.repeat.gate_counts);
    rep.finish();
  }
  Section sweep = section("sweep", need.sweep, need.sweep);
  if (sweep.present()) parse_sweep(sweep, sc.sweep, errors);
  Section budget = section("budget", need.budget, false);
  if (budget.present()) parse_budget(budget, sc.budget);
  top.finish();

  if (sc.gate.crosstalk > 0.0 && sc.trap.ion_count < 2) top.field_error("gate.crosstalk", "needs at least two ions");
  if (sc.kind == ScenarioKind::sdf_single && sc.trap.ion_count != 1 && sc.sdf.experiment != SdfExperiment::bsb_thermometry)
    top.field_error("trap.ion_count", "single-ion experiments need ion_count 1");
  if (need.gate && gate.present() && sc.kind == ScenarioKind::gate && sc.simulation.repetitions < 1)
    top.field_error("simulation.repetitions", "must be positive");
  if (errors.empty() && sc.stochastic() && !sc.seed) top.field_error("seed", "required for a stochastic scenario");
  if (!errors.empty()) throw ConfigError(errors);
  return sc;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Emitter {
 public:
  void section(const std::string& name) { os_ << name << ":\n"; }
  void kv(const std::string& key, const std::string& value, int indent = 1) {
    os_ << std::string(2 * indent, ' ') << key << ": " << value << "\n";
  }
  void q(const std::string& key, double value, double scale, int indent = 1) { kv(key, num(value / scale), indent); }
  void list(const std::string& key, const std::vector<double>& v, double scale = 1.0, int indent = 1) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i] / scale);
    kv(key, s + "]", indent);
  }
  void ilist(const std::string& key, const std::vector<int>& v, int indent = 1) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    kv(key, s + "]", indent);
  }
  void raw(const std::string& line) { os_ << line << "\n"; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

constexpr double kMHz = kTwoPi * 1e6, kKHz = kTwoPi * 1e3;

void emit_envelope(Emitter& e, const PulseEnvelope& env, int indent = 1) {
  e.q("duration_us", env.total_duration, 1e-6, indent);
  e.q("ramp_us", env.ramp_duration, 1e-6, indent);
  e.kv("shape", std::string(to_string(env.shape)), indent);
}

std::string mode_name(int m) { return m == 0 ? "com" : m == 1 ? "breathing" : std::to_string(m); }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : InvalidConfig([&] {
        std::string s;
        for (const auto& e : errors) s += (s.empty() ? "" : "\n") + e;
        return s;
      }()),
      errors_(std::move(errors)) {}

std::string_view to_string(ScenarioKind k) {
  for (auto [kind, name] : kKinds)
    if (kind == k) return name;
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (auto [kind, n] : kKinds)
    if (n == name) return kind;
  throw InvalidArgument("unknown scenario kind '" + std::string(name) + "'");
}

std::string_view subcommand_name(ScenarioKind k) {
  for (auto [kind, name] : kSubcommands)
    if (kind == k) return name;
  return "?";
}

std::string_view to_string(SdfExperiment e) {
  switch (e) {
    case SdfExperiment::detuned: return "detuned";
    case SdfExperiment::resonant: return "resonant";
    case SdfExperiment::bsb_thermometry: return "bsb_thermometry";
  }
  return "?";
}

bool Scenario::stochastic() const {
  switch (kind) {
    case ScenarioKind::gate:
    case ScenarioKind::repeat_gates:
    case ScenarioKind::budget:
    case ScenarioKind::chain_sweep:
      return noise.has_pointing() && noise.pointing_sampling == PointingSampling::monte_carlo;
    case ScenarioKind::bell:
      return (noise.has_pointing() && noise.pointing_sampling == PointingSampling::monte_carlo) || detection.shots > 0;
    case ScenarioKind::sdf_single:
      return sdf.experiment == SdfExperiment::bsb_thermometry && sdf.shots > 0;
    default:
      return false;
  }
}

Scenario parse_config_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("config: syntax error: ") + e.what()});
  }
  return parse_node(root);
}

Scenario parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

std::string emit_config(const Scenario& sc) {
  const Needs need = needs_of(sc.kind);
  Emitter e;
  e.raw("kind: " + std::string(to_string(sc.kind)));
  if (!sc.name.empty()) e.raw("name: " + sc.name);
  if (sc.seed) e.raw("seed: " + std::to_string(*sc.seed));
  if (need.trap && (need.trap_required || sc.trap.axial_freq > 0.0)) {
    e.section("trap");
    e.kv("ion_count", std::to_string(sc.trap.ion_count));
    e.q("axial_freq_mhz", sc.trap.axial_freq, kMHz);
    e.q("ion_mass_amu", sc.trap.ion_mass, kAtomicMassUnit);
    e.q("qubit_wavelength_nm", sc.trap.qubit_wavelength, 1e-9);
  }
  if (need.beam) {
    e.section("beam");
    e.kv("kind", std::string(to_string(sc.beam.kind)));
    e.q("waist_um", sc.beam.waist, 1e-6);
    e.q("center_um", sc.beam.center, 1e-6);
    e.q("omega_ref_khz", sc.beam.omega_ref, kKHz);
  }
  if (need.gate) {
    const GateConfig& g = sc.gate;
    e.section("gate");
    e.ilist("pair", {g.ion_a + 1, g.ion_b + 1});
    e.kv("mediator", mode_name(g.mediator_mode));
    e.q("detuning_khz", g.detuning, kKHz);
    emit_envelope(e, g.envelope);
    e.q("target_phase_rad", g.target_phase, 1.0);
    e.q("sdf_khz", g.sdf_amplitude, kKHz);
    e.kv("calibrate", g.calibrate ? "true" : "false");
    e.kv("crosstalk", num(g.crosstalk));
    if (g.all_modes)
      e.kv("include_modes", "all");
    else if (g.include_modes.empty())
      e.kv("include_modes", "mediator");
    else
      e.ilist("include_modes", g.include_modes);
  }
  if (need.noise) {
    const NoiseModel& n = sc.noise;
    e.section("noise");
    e.q("t2_ms", n.qubit_t2, 1e-3);
    e.kv("dephasing", std::string(to_string(n.dephasing)));
    e.list("heating_quanta_per_s", n.heating_rates);
    e.kv("heating_bath", std::string(to_string(n.heating_bath)));
    e.q("lifetime_ms", n.metastable_lifetime, 1e-3);
    e.q("pointing_sigma_um", n.pointing_sigma, 1e-6);
    e.kv("pointing_shots", std::to_string(n.pointing_shots));
    e.kv("pointing_sampling", std::string(to_string(n.pointing_sampling)));
    e.list("initial_nbar", n.initial_nbar);
  }
  if (need.simulation) {
    const SimulationConfig& s = sc.simulation;
    e.section("simulation");
    e.kv("repetitions", std::to_string(s.repetitions));
    e.kv("samples_per_gate", std::to_string(s.samples_per_gate));
    e.ilist("fock_levels", s.fock_levels);
    e.kv("max_doublings", std::to_string(s.max_doublings));
  }
  if (need.detection) {
    const DetectionConfig& d = sc.detection;
    e.section("detection");
    e.kv("f_bright", num(d.f_bright));
    e.kv("f_dark", num(d.f_dark));
    e.kv("correct", d.correct ? "true" : "false");
    e.kv("shots", std::to_string(d.shots));
  }
  if (need.profile) {
    const ProfileConfig& p = sc.profile;
    e.section("profile");
    e.q("z_min_um", p.z_min, 1e-6);
    e.q("z_max_um", p.z_max, 1e-6);
    e.kv("points", std::to_string(p.points));
    e.q("neighbour_distance_um", p.neighbour_distance, 1e-6);
  }
  if (need.spectrum) {
    const SpectrumConfig& s = sc.spectrum;
    e.section("spectrum");
    e.kv("ion", std::to_string(s.ion + 1));
    e.q("start_mhz", s.start, kMHz);
    e.q("stop_mhz", s.stop, kMHz);
    e.kv("points", std::to_string(s.points));
    e.q("duration_us", s.duration, 1e-6);
    e.list("nbar", s.nbar);
  }
  if (need.sdf) {
    const SdfConfig& s = sc.sdf;
    e.section("sdf");
    e.kv("experiment", std::string(to_string(s.experiment)));
    emit_envelope(e, s.envelope);
    e.kv("points", std::to_string(s.points));
    if (s.experiment != SdfExperiment::bsb_thermometry) e.q("sdf_khz", s.sdf_amplitude, kKHz);
    if (s.experiment == SdfExperiment::detuned) e.q("detuning_khz", s.detuning, kKHz);
    if (s.experiment == SdfExperiment::bsb_thermometry) {
      e.q("bsb_rabi_khz", s.bsb_rabi, kKHz);
      e.kv("nbar", num(s.nbar));
      e.kv("shots", std::to_string(s.shots));
    }
  }
  if (need.bell) {
    e.section("bell");
    e.kv("phases", std::to_string(sc.bell.phases));
  }
  if (need.repeat) {
    e.section("repeat");
    e.ilist("gate_counts", sc.repeat.gate_counts);
  }
  if (need.sweep) {
    const SweepConfig& s = sc.sweep;
    e.section("sweep");
    e.raw("  points:");
    for (const SweepPoint& p : s.points) {
      e.raw("    - ion_count: " + std::to_string(p.ion_count));
      e.q("axial_freq_mhz", p.axial_freq, kMHz, 3);
      e.q("heating_com_quanta_per_s", p.heating_com, 1.0, 3);
      e.q("heating_breathing_quanta_per_s", p.heating_breathing, 1.0, 3);
      e.kv("nbar_com", num(p.nbar_com), 3);
      e.kv("nbar_breathing", num(p.nbar_breathing), 3);
    }
    std::string m = "[";
    for (std::size_t i = 0; i < s.mediators.size(); ++i) m += (i ? ", " : "") + mode_name(s.mediators[i]);
    e.kv("mediators", m + "]");
    for (int med : s.mediators) {
      const SweepGate& g = med == 0 ? s.com : s.breathing;
      e.raw(std::string("  ") + (med == 0 ? "com_gate" : "breathing_gate") + ":");
      e.q("detuning_khz", g.detuning, kKHz, 2);
      emit_envelope(e, g.envelope, 2);
    }
    e.kv("crosstalk", num(s.crosstalk));
  }
  if (need.budget) {
    const BudgetSection& b = sc.budget;
    e.section("budget");
    e.ilist("gate_counts", b.gate_counts);
    e.kv("full_pointing_sampling", std::string(to_string(b.full_pointing_sampling)));
    e.kv("full_pointing_shots", std::to_string(b.full_pointing_shots));
    if (!b.reference.empty()) {
      e.raw("  reference:");
      for (const auto& [k, v] : b.reference) e.kv(k, num(v), 2);
    }
    if (b.reference_total) e.kv("reference_total", num(*b.reference_total));
  }
  return e.str();
}

}  // namespace hgtrap
