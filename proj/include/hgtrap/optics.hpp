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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hgtrap/chain.hpp"

namespace hgtrap {

enum class BeamKind { gaussian, hg01_ideal, zero_pi };

std::string_view to_string(BeamKind kind);
BeamKind parse_beam_kind(std::string_view name);

/// Transverse field along the chain axis. Every model is normalised so that
/// max_z |E(z)| = 1; omega_ref is the carrier Rabi frequency at that maximum.
struct BeamProfile {
  BeamKind kind = BeamKind::hg01_ideal;
  double waist = 1e-6;     ///< w0, metres
  double center = 0.0;     ///< dark slit (or intensity centre), metres
  double omega_ref = 0.0;  ///< rad/s

  void validate() const;
};

struct BeamArray {
  std::vector<BeamProfile> beams;
  std::vector<int> targets;  ///< targets[b] is the ion addressed by beams[b]
};

/// Carrier and gradient couplings seen by an ion at a given position.
struct CouplingSample {
  double carrier_rabi = 0.0;         ///< omega_ref * |E|
  double gradient_rabi_scale = 0.0;  ///< omega_ref * |dE/dz| * w_g
  int carrier_sign = 0;
  int gradient_sign = 0;
};

/// Signed field at axial position z.
double field_amplitude(const BeamProfile& profile, double z);

/// Signed dE/dz in 1/m.
double field_gradient(const BeamProfile& profile, double z);

/// Focal field of a Gaussian with a half-plane pi phase step: proportional to
/// the Dawson function, with its width matched so the two lobes peak at the
/// same +-w0/sqrt(2) as the ideal HG01 mode. Normalised to unit peak.
double zero_pi_focal_field(double w0, double z);
double zero_pi_focal_gradient(double w0, double z);

/// Gradient length w_g = 1 / max|dE/dz| of the ideal HG01 profile, i.e.
/// w0 / (sqrt(2) e^(1/2)). With it omega_ref is the gradient Rabi scale at the
/// dark slit of an ideal HG01 beam.
double gradient_normalization(double w0);

CouplingSample coupling_sample(const BeamProfile& profile, double z_ion);

/// Largest |dE/dz| of the profile, 1/m.
double max_gradient(const BeamProfile& profile);

enum class ProfileAxis {
  gradient,  ///< along the chain, across the dark slit
  slit,      ///< along the dark slit, where every model is a plain Gaussian
};

/// D4sigma diameter (4 x second-moment width) of |E|^2 along the chosen axis.
/// The zero_pi intensity tail falls as 1/z^2, so along the gradient axis its
/// second moment is taken over |z - center| <= 20 w0.
double d4sigma_diameter(const BeamProfile& profile, ProfileAxis axis = ProfileAxis::gradient);

/// Crosstalk of each beam onto each ion, normalised to the profile maxima
/// (max |E| for the carrier, max |dE/dz| for the gradient), so an aligned
/// beam has a unit diagonal.
struct CrosstalkMatrix {
  Eigen::MatrixXd carrier;   ///< beams x ions
  Eigen::MatrixXd gradient;  ///< beams x ions
};
CrosstalkMatrix crosstalk_matrix(const BeamArray& array, const IonChain& chain);

struct ProfileSample {
  double z;
  double amplitude;
  double gradient;  ///< normalised to max |dE/dz|
};
std::vector<ProfileSample> sample_profile(const BeamProfile& profile, double z_min, double z_max, int points);

/// CSV with columns z_um,amplitude,gradient.
std::string profile_csv(const std::vector<ProfileSample>& samples);

}  // namespace hgtrap
