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

#include "hgtrap/optics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_dawson.h>

#include "hgtrap/errors.hpp"

namespace hgtrap {

namespace {

const double kSqrtE = std::exp(0.5);

struct DawsonPeak {
  double x;
  double value;
};

// Location and height of the Dawson maximum, where D'(x) = 1 - 2 x D(x) = 0.
const DawsonPeak& dawson_peak() {
  static const DawsonPeak peak = [] {
    double x = 0.92;
    for (int i = 0; i < 50; ++i) {
      double d = gsl_sf_dawson(x);
      double f = 1.0 - 2.0 * x * d;
      double fp = -2.0 * d - 2.0 * x * f;
      double dx = f / fp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    return DawsonPeak{x, gsl_sf_dawson(x)};
  }();
  return peak;
}

// Dawson width giving lobe maxima at +-w0/sqrt(2).
double zero_pi_width(double w0) { return w0 / (std::sqrt(2.0) * dawson_peak().x); }

double second_moment_width(const auto& intensity, double center, double half_window) {
  using boost::math::quadrature::gauss_kronrod;
  double a = center - half_window;
  double b = center + half_window;
  double norm = gauss_kronrod<double, 61>::integrate(intensity, a, b, 12, 1e-13);
  double mean = gauss_kronrod<double, 61>::integrate([&](double z) { return z * intensity(z); }, a, b, 12, 1e-13) / norm;
  double var = gauss_kronrod<double, 61>::integrate(
                   [&](double z) { return (z - mean) * (z - mean) * intensity(z); }, a, b, 12, 1e-13) /
               norm;
  return 4.0 * std::sqrt(var);
}

}  // namespace

std::string_view to_string(BeamKind kind) {
  switch (kind) {
    case BeamKind::gaussian: return "gaussian";
    case BeamKind::hg01_ideal: return "hg01_ideal";
    case BeamKind::zero_pi: return "zero_pi";
  }
  return "?";
}

BeamKind parse_beam_kind(std::string_view name) {
  if (name == "gaussian") return BeamKind::gaussian;
  if (name == "hg01_ideal" || name == "hg01") return BeamKind::hg01_ideal;
  if (name == "zero_pi") return BeamKind::zero_pi;
  throw InvalidConfig("unknown beam kind '" + std::string(name) + "' (gaussian | hg01_ideal | zero_pi)");
}

void BeamProfile::validate() const {
  if (!(waist > 0.0) || !std::isfinite(waist)) throw InvalidConfig("beam waist must be > 0");
  if (!(omega_ref >= 0.0) || !std::isfinite(omega_ref)) throw InvalidConfig("beam omega_ref must be >= 0");
  if (!std::isfinite(center)) throw InvalidConfig("beam center must be finite");
}

double zero_pi_focal_field(double w0, double z) {
  const auto& pk = dawson_peak();
  return gsl_sf_dawson(z / zero_pi_width(w0)) / pk.value;
}

double zero_pi_focal_gradient(double w0, double z) {
  const auto& pk = dawson_peak();
  double s = zero_pi_width(w0);
  double x = z / s;
  return (1.0 - 2.0 * x * gsl_sf_dawson(x)) / (s * pk.value);
}

double field_amplitude(const BeamProfile& p, double z) {
  double u = z - p.center;
  double w = p.waist;
  switch (p.kind) {
    case BeamKind::gaussian: return std::exp(-u * u / (w * w));
    case BeamKind::hg01_ideal: return std::sqrt(2.0) * kSqrtE * (u / w) * std::exp(-u * u / (w * w));
    case BeamKind::zero_pi: return zero_pi_focal_field(w, u);
  }
  return 0.0;
}

double field_gradient(const BeamProfile& p, double z) {
  double u = z - p.center;
  double w = p.waist;
  switch (p.kind) {
    case BeamKind::gaussian: return -2.0 * u / (w * w) * std::exp(-u * u / (w * w));
    case BeamKind::hg01_ideal:
      return std::sqrt(2.0) * kSqrtE / w * (1.0 - 2.0 * u * u / (w * w)) * std::exp(-u * u / (w * w));
    case BeamKind::zero_pi: return zero_pi_focal_gradient(w, u);
  }
  return 0.0;
}

double gradient_normalization(double w0) { return w0 / (std::sqrt(2.0) * kSqrtE); }

double max_gradient(const BeamProfile& p) {
  switch (p.kind) {
    case BeamKind::gaussian: return std::sqrt(2.0) / p.waist * std::exp(-0.5);
    case BeamKind::hg01_ideal: return std::sqrt(2.0) * kSqrtE / p.waist;
    case BeamKind::zero_pi: return 1.0 / (zero_pi_width(p.waist) * dawson_peak().value);
  }
  return 0.0;
}

CouplingSample coupling_sample(const BeamProfile& p, double z_ion) {
  double e = field_amplitude(p, z_ion);
  double g = field_gradient(p, z_ion);
  CouplingSample s;
  s.carrier_rabi = p.omega_ref * std::abs(e);
  s.gradient_rabi_scale = p.omega_ref * std::abs(g) * gradient_normalization(p.waist);
  s.carrier_sign = (e > 0) - (e < 0);
  s.gradient_sign = (g > 0) - (g < 0);
  return s;
}

double d4sigma_diameter(const BeamProfile& p, ProfileAxis axis) {
  p.validate();
  if (axis == ProfileAxis::slit) {
    double w = p.waist;
    return second_moment_width([w](double y) { return std::exp(-2.0 * y * y / (w * w)); }, 0.0, 10.0 * w);
  }
  double window = (p.kind == BeamKind::zero_pi ? 20.0 : 10.0) * p.waist;
  return second_moment_width(
      [&p](double z) {
        double e = field_amplitude(p, z);
        return e * e;
      },
      p.center, window);
}

CrosstalkMatrix crosstalk_matrix(const BeamArray& array, const IonChain& chain) {
  if (array.beams.empty()) throw InvalidArgument("crosstalk_matrix: empty beam array");
  if (array.targets.size() != array.beams.size()) throw InvalidArgument("crosstalk_matrix: one target per beam required");
  const int nb = static_cast<int>(array.beams.size());
  const int ni = chain.size();
  CrosstalkMatrix out{Eigen::MatrixXd::Zero(nb, ni), Eigen::MatrixXd::Zero(nb, ni)};
  for (int b = 0; b < nb; ++b) {
    const auto& beam = array.beams[b];
    beam.validate();
    if (array.targets[b] < 0 || array.targets[b] >= ni) throw InvalidArgument("crosstalk_matrix: target out of range");
    double gmax = max_gradient(beam);
    for (int j = 0; j < ni; ++j) {
      out.carrier(b, j) = std::abs(field_amplitude(beam, chain.positions[j]));
      out.gradient(b, j) = std::abs(field_gradient(beam, chain.positions[j])) / gmax;
    }
  }
  return out;
}

std::vector<ProfileSample> sample_profile(const BeamProfile& p, double z_min, double z_max, int points) {
  if (points < 2) throw InvalidArgument("sample_profile: need at least two points");
  std::vector<ProfileSample> out;
  out.reserve(points);
  double gmax = max_gradient(p);
  for (int i = 0; i < points; ++i) {
    double z = z_min + (z_max - z_min) * i / (points - 1);
    out.push_back({z, field_amplitude(p, z), field_gradient(p, z) / gmax});
  }
  return out;
}

std::string profile_csv(const std::vector<ProfileSample>& samples) {
  std::ostringstream os;
  os << "z_um,amplitude,gradient\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", s.z * 1e6, s.amplitude, s.gradient);
    os << buf;
  }
  return os.str();
}

}  // namespace hgtrap
