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
#include <string_view>
#include <vector>

namespace hgtrap {

enum class EnvelopeShape { flat, sin2_ramps };

std::string_view to_string(EnvelopeShape shape);
EnvelopeShape parse_envelope_shape(std::string_view name);

/// Amplitude envelope of a gate or SDF pulse: a flat top with optional sin^2
/// ramps of length ramp_duration at both ends.
struct PulseEnvelope {
  double total_duration = 0.0;  ///< s
  double ramp_duration = 0.0;   ///< s
  EnvelopeShape shape = EnvelopeShape::flat;
  double peak = 1.0;

  void validate() const;

  /// Envelope value at time t; zero outside [0, total_duration].
  double value(double t) const;

  /// Exact integral of value(s) * exp(i * omega * s) over [0, t].
  std::complex<double> integral_exp(double omega, double t) const;

  /// Breakpoints where the envelope is not smooth (segment boundaries).
  std::vector<double> breakpoints() const;

  static PulseEnvelope flat(double duration) { return {duration, 0.0, EnvelopeShape::flat, 1.0}; }
  static PulseEnvelope sin2(double duration, double ramp) { return {duration, ramp, EnvelopeShape::sin2_ramps, 1.0}; }
};

}  // namespace hgtrap
