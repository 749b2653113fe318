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

#include "hgtrap/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "hgtrap/errors.hpp"

namespace hgtrap {

namespace {

std::vector<double> thermal_distribution(double nbar, int levels) {
  std::vector<double> p(levels);
  const double q = nbar / (nbar + 1.0);
  double norm = 0.0;
  for (int n = 0; n < levels; ++n) norm += (p[n] = std::pow(q, n) / (nbar + 1.0));
  for (double& v : p) v /= norm;
  return p;
}

int auto_truncation(double nbar) { return std::max(20, static_cast<int>(std::ceil(10.0 * (nbar + 1.0)))); }

double line(double rabi, double detuning, double tau) {
  double gen2 = rabi * rabi + detuning * detuning;
  if (gen2 == 0.0) return 0.0;
  double s = std::sin(0.5 * std::sqrt(gen2) * tau);
  return rabi * rabi / gen2 * s * s;
}

}  // namespace

double sdf_population(double omega_sdf, double tau) {
  if (tau < 0.0) throw InvalidArgument("sdf_population: tau must be >= 0");
  return -0.5 * std::expm1(-2.0 * omega_sdf * omega_sdf * tau * tau);
}

double transition_rabi(double eta, double omega_carrier, int n, int s, SidebandApprox approx) {
  if (n < 0 || n + s < 0) return 0.0;
  if (approx == SidebandApprox::lamb_dicke) {
    if (s == 0) return omega_carrier;
    return omega_carrier * eta * std::sqrt(static_cast<double>(s > 0 ? n + 1 : n));
  }
  const double x = eta * eta;
  const unsigned lo = static_cast<unsigned>(std::min(n, n + s));
  const unsigned ds = static_cast<unsigned>(std::abs(s));
  // sqrt(n_< ! / n_> !) = 1 / sqrt(rising factorial (n_< + 1)^(ds))
  double ratio = ds == 0 ? 1.0 : 1.0 / std::sqrt(boost::math::rising_factorial(static_cast<double>(lo + 1), ds));
  double lag = boost::math::laguerre(lo, ds, x);
  return std::abs(omega_carrier * std::exp(-0.5 * x) * std::pow(eta, ds) * ratio * lag);
}

std::vector<double> sideband_rabi(double eta, double omega_carrier, double nbar, std::span<const double> times,
                                  Transition transition, SidebandApprox approx, int truncation) {
  if (nbar < 0.0 || !std::isfinite(nbar)) throw InvalidArgument("sideband_rabi: nbar must be >= 0");
  const double needed = 10.0 * (nbar + 1.0);
  if (truncation == 0) truncation = auto_truncation(nbar);
  if (truncation < needed)
    throw TruncationError("sideband_rabi: " + std::to_string(truncation) + " Fock states is below 10 (nbar + 1)", 0,
                          0.0);
  const int s = transition == Transition::blue ? 1 : transition == Transition::red ? -1 : 0;
  std::vector<double> p = thermal_distribution(nbar, truncation);
  std::vector<double> rabi(truncation);
  for (int n = 0; n < truncation; ++n) rabi[n] = transition_rabi(eta, omega_carrier, n, s, approx);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    double acc = 0.0;
    for (int n = 0; n < truncation; ++n) {
      double v = std::sin(0.5 * rabi[n] * t);
      acc += p[n] * v * v;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<double> simulate_spectrum(const IonChain& chain, const ModeSet& modes, const BeamProfile& beam, int ion,
                                      const SpectrumProbe& probe) {
  beam.validate();
  if (ion < 0 || ion >= chain.size()) throw InvalidArgument("simulate_spectrum: ion index out of range");
  if (!(probe.duration > 0.0)) throw InvalidArgument("simulate_spectrum: probe duration must be > 0");
  if (!probe.nbar.empty() && static_cast<int>(probe.nbar.size()) != modes.size())
    throw InvalidArgument("simulate_spectrum: nbar needs one entry per mode");
  const double z = chain.positions[ion];
  const double carrier = beam.omega_ref * std::abs(field_amplitude(beam, z));
  const double grad = std::abs(field_gradient(beam, z));
  std::vector<double> out(probe.detunings.size(), 0.0);

  for (std::size_t k = 0; k < out.size(); ++k) out[k] += line(carrier, probe.detunings[k], probe.duration);
  for (int m = 0; m < modes.size(); ++m) {
    const double eta = grad * std::abs(modes.eigenvectors(ion, m)) * modes.zero_point[m];
    if (eta == 0.0) continue;
    const double nbar = probe.nbar.empty() ? 0.0 : probe.nbar[m];
    const int levels = auto_truncation(nbar);
    std::vector<double> p = thermal_distribution(nbar, levels);
    const double nu = modes.frequencies[m];
    for (std::size_t k = 0; k < out.size(); ++k) {
      double acc = 0.0;
      for (int n = 0; n < levels; ++n) {
        double blue = beam.omega_ref * eta * std::sqrt(n + 1.0);
        double red = beam.omega_ref * eta * std::sqrt(static_cast<double>(n));
        acc += p[n] * (line(blue, probe.detunings[k] - nu, probe.duration) +
                       line(red, probe.detunings[k] + nu, probe.duration));
      }
      out[k] += acc;
    }
  }
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace hgtrap
