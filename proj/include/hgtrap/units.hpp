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

#include <numbers>

namespace hgtrap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018.
inline constexpr double kElementaryCharge = 1.602176634e-19;   // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;   // kg
inline constexpr double kElectronMass = 9.1093837015e-31;      // kg

/// Singly ionised ytterbium-171 (neutral atomic mass less one electron).
inline constexpr double kYb171IonMass = 170.9363258 * kAtomicMassUnit - kElectronMass;

// Unit helpers. Frequencies quoted in cycles are turned into angular
// frequencies here and nowhere else.
inline constexpr double mhz(double f) { return kTwoPi * f * 1e6; }
inline constexpr double khz(double f) { return kTwoPi * f * 1e3; }
inline constexpr double to_mhz(double omega) { return omega / (kTwoPi * 1e6); }
inline constexpr double to_khz(double omega) { return omega / (kTwoPi * 1e3); }
inline constexpr double us(double t) { return t * 1e-6; }
inline constexpr double um(double z) { return z * 1e-6; }
inline constexpr double ms(double t) { return t * 1e-3; }

}  // namespace hgtrap
