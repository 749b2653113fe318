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

#include <span>
#include <vector>

#include "hgtrap/chain.hpp"
#include "hgtrap/optics.hpp"

namespace hgtrap {

/// Resonant SDF from |0> with the mode in its ground state:
/// P1 = (1 - exp(-2 Omega^2 tau^2)) / 2.
double sdf_population(double omega_sdf, double tau);

enum class Transition { carrier, red, blue };
enum class SidebandApprox {
  full,        ///< Laguerre matrix elements with Debye-Waller factors
  lamb_dicke,  ///< Omega eta sqrt(n+1) (blue), Omega eta sqrt(n) (red), Omega (carrier)
};

/// Resonant flopping P1(t) from a thermal mode. `truncation` Fock states are
/// summed (0 picks max(20, ceil(10 (nbar + 1)))); fewer than 10 (nbar + 1)
/// throws TruncationError.
std::vector<double> sideband_rabi(double eta, double omega_carrier, double nbar, std::span<const double> times,
                                  Transition transition, SidebandApprox approx = SidebandApprox::full,
                                  int truncation = 0);

/// Rabi frequency of |n> -> |n + s> for a single mode (s = 0, +1, -1).
double transition_rabi(double eta, double omega_carrier, int n, int s, SidebandApprox approx);

struct SpectrumProbe {
  std::vector<double> detunings;  ///< laser minus qubit frequency, rad/s
  double duration = 0.0;          ///< s
  std::vector<double> nbar;       ///< per mode; empty means ground state
};

/// Weak-probe excitation spectrum of one ion under a beam: a carrier line with
/// Rabi frequency omega_ref |E(z_ion)| and red/blue lines at -+ nu_m with
/// Rabi frequency omega_ref * eta_m sqrt(n (+1)), eta_m = |dE/dz| b_jm z0_m.
/// Lines are added incoherently and the result clipped to [0, 1].
std::vector<double> simulate_spectrum(const IonChain& chain, const ModeSet& modes, const BeamProfile& beam, int ion,
                                      const SpectrumProbe& probe);

}  // namespace hgtrap
