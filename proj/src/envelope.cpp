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

#include "hgtrap/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgtrap/errors.hpp"
#include "hgtrap/units.hpp"

namespace hgtrap {

namespace {

using cd = std::complex<double>;

struct Term {
  cd coef;
  double omega;
};

struct Segment {
  double t0, t1;
  Term terms[3];
  int count;
};

// int_a^b exp(i w s) ds without cancellation for small w (b - a).
cd exp_integral(double w, double a, double b) {
  double len = b - a;
  double x = w * len;
  cd base = std::polar(1.0, w * a);
  if (std::abs(x) < 1e-6) {
    return base * len * cd(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  }
  double h = std::sin(0.5 * x);
  cd em1(-2.0 * h * h, std::sin(x));  // exp(ix) - 1
  return base * em1 / cd(0.0, w);
}

int segments(const PulseEnvelope& e, Segment out[3]) {
  const double tau = e.total_duration;
  const double r = e.ramp_duration;
  if (e.shape == EnvelopeShape::flat || r <= 0.0) {
    out[0] = {0.0, tau, {{e.peak, 0.0}}, 1};
    return 1;
  }
  const double k = kPi / r;
  const double p = e.peak;
  int n = 0;
  out[n++] = {0.0, r, {{0.5 * p, 0.0}, {-0.25 * p, k}, {-0.25 * p, -k}}, 3};
  if (tau - 2.0 * r > 0.0) out[n++] = {r, tau - r, {{p, 0.0}}, 1};
  cd up = std::polar(1.0, k * tau);
  out[n++] = {tau - r, tau, {{0.5 * p, 0.0}, {-0.25 * p * up, -k}, {-0.25 * p * std::conj(up), k}}, 3};
  return n;
}

}  // namespace

std::string_view to_string(EnvelopeShape shape) { return shape == EnvelopeShape::flat ? "flat" : "sin2_ramps"; }

EnvelopeShape parse_envelope_shape(std::string_view name) {
  if (name == "flat") return EnvelopeShape::flat;
  if (name == "sin2_ramps" || name == "sin2") return EnvelopeShape::sin2_ramps;
  throw InvalidConfig("unknown envelope shape '" + std::string(name) + "' (flat | sin2_ramps)");
}

void PulseEnvelope::validate() const {
  if (!(total_duration > 0.0) || !std::isfinite(total_duration)) throw InvalidConfig("pulse duration must be > 0");
  if (!(ramp_duration >= 0.0)) throw InvalidConfig("ramp duration must be >= 0");
  if (2.0 * ramp_duration > total_duration * (1.0 + 1e-12)) throw InvalidConfig("2 * ramp_duration exceeds total_duration");
  if (!(peak >= 0.0 && peak <= 1.0)) throw InvalidConfig("envelope peak scaling must lie in [0, 1]");
}

double PulseEnvelope::value(double t) const {
  if (t < 0.0 || t > total_duration) return 0.0;
  if (shape == EnvelopeShape::flat || ramp_duration <= 0.0) return peak;
  double edge = std::min(t, total_duration - t);
  if (edge >= ramp_duration) return peak;
  double s = std::sin(0.5 * kPi * edge / ramp_duration);
  return peak * s * s;
}

cd PulseEnvelope::integral_exp(double omega, double t) const {
  Segment seg[3];
  int n = segments(*this, seg);
  t = std::clamp(t, 0.0, total_duration);
  cd acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (t <= seg[i].t0) break;
    double b = std::min(t, seg[i].t1);
    for (int k = 0; k < seg[i].count; ++k) acc += seg[i].terms[k].coef * exp_integral(seg[i].terms[k].omega + omega, seg[i].t0, b);
  }
  return acc;
}

std::vector<double> PulseEnvelope::breakpoints() const {
  Segment seg[3];
  int n = segments(*this, seg);
  std::vector<double> out{0.0};
  for (int i = 0; i < n; ++i) out.push_back(seg[i].t1);
  return out;
}

}  // namespace hgtrap
