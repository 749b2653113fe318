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

#include "hgtrap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "hgtrap/errors.hpp"
#include "hgtrap/units.hpp"

namespace hgtrap {

namespace {

using cd = std::complex<double>;

// Applies the 2x2 matrix a to qubit q (0 = most significant) of an n-qubit vector.
Eigen::VectorXd apply_on_qubit(const Eigen::Matrix2d& a, const Eigen::VectorXd& v, int q, int n) {
  Eigen::VectorXd out(v.size());
  const int bit = 1 << (n - 1 - q);
  for (int i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    double x0 = v[i], x1 = v[i | bit];
    out[i] = a(0, 0) * x0 + a(0, 1) * x1;
    out[i | bit] = a(1, 0) * x0 + a(1, 1) * x1;
  }
  return out;
}

Eigen::VectorXd apply_kron(const Eigen::Matrix2d& a, Eigen::VectorXd v, int n) {
  for (int q = 0; q < n; ++q) v = apply_on_qubit(a, v, q, n);
  return v;
}

struct WeightedLine {
  double intercept, slope, slope_se;
};

WeightedLine fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
  const int n = static_cast<int>(x.size());
  double sw = 0, sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw FitError("linear fit: abscissae are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    double r = y[i] - intercept - slope * x[i];
    rss += w[i] * r * r;
  }
  double se = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return {intercept, slope, se};
}

double thermal_bsb(double omega, double nbar, double t) {
  if (nbar <= 0.0) {
    double s = std::sin(0.5 * omega * t);
    return s * s;
  }
  const int levels = std::max(40, static_cast<int>(std::ceil(12.0 * (nbar + 1.0))));
  const double q = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0), acc = 0.0, norm = 0.0;
  for (int n = 0; n < levels; ++n) {
    double s = std::sin(0.5 * omega * std::sqrt(n + 1.0) * t);
    acc += p * s * s;
    norm += p;
    p *= q;
  }
  return acc / norm;
}

struct BsbFunctor {
  typedef double Scalar;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  typedef Eigen::VectorXd InputType;
  typedef Eigen::VectorXd ValueType;
  typedef Eigen::MatrixXd JacobianType;

  std::span<const double> t, y;
  bool pin_nbar;
  double scale;  // omega is fitted in units of `scale`

  int inputs() const { return pin_nbar ? 1 : 2; }
  int values() const { return static_cast<int>(t.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const double omega = x[0] * scale;
    const double nbar = pin_nbar ? 0.0 : std::max(0.0, x[1]);
    for (std::size_t i = 0; i < t.size(); ++i) f[i] = thermal_bsb(omega, nbar, t[i]) - y[i];
    return 0;
  }
};

struct LmResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
  int status;
};

LmResult run_lm(const BsbFunctor& f, Eigen::VectorXd x) {
  Eigen::NumericalDiff<BsbFunctor, Eigen::Central> num(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<BsbFunctor, Eigen::Central>> lm(num);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 4000;
  int status = lm.minimize(x);
  LmResult r;
  r.x = x;
  r.status = status;
  r.residual.resize(f.values());
  f(x, r.residual);
  r.jacobian.resize(f.values(), f.inputs());
  num.df(x, r.jacobian);
  return r;
}

}  // namespace

ParityFit parity_fit(std::span<const double> phases, std::span<const double> parity) {
  const int n = static_cast<int>(phases.size());
  if (n != static_cast<int>(parity.size())) throw InvalidArgument("parity_fit: size mismatch");
  if (n < 8) throw FitError("parity_fit: need at least 8 analysis phases");
  auto [lo, hi] = std::minmax_element(phases.begin(), phases.end());
  if (*hi - *lo < kPi * (n - 1) / n - 1e-9) throw FitError("parity_fit: phases must span one period of cos(2 phi)");
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = std::cos(2.0 * phases[i]);
    x(i, 1) = std::sin(2.0 * phases[i]);
    y[i] = parity[i];
  }
  Eigen::Matrix2d xtx = x.transpose() * x;
  if (std::abs(xtx.determinant()) < 1e-12 * n * n) throw FitError("parity_fit: phases do not resolve cos and sin");
  Eigen::Vector2d beta = xtx.ldlt().solve(x.transpose() * y);
  Eigen::VectorXd res = y - x * beta;
  ParityFit fit;
  fit.residual_rms = std::sqrt(res.squaredNorm() / n);
  const double s2 = n > 2 ? res.squaredNorm() / (n - 2) : 0.0;
  fit.covariance = s2 * xtx.inverse();
  const double a = beta[0], b = beta[1];
  const double c = std::hypot(a, b);
  fit.contrast = std::min(c, 1.0);
  fit.phase_offset = c > 0.0 ? std::atan2(-b, a) : 0.0;
  if (c > 0.0) {
    Eigen::Vector2d gc(a / c, b / c);
    Eigen::Vector2d gp(b / (c * c), -a / (c * c));
    fit.contrast_error = std::sqrt(std::max(0.0, gc.dot(fit.covariance * gc)));
    fit.phase_error = std::sqrt(std::max(0.0, gp.dot(fit.covariance * gp)));
  } else {
    fit.contrast_error = std::sqrt(std::max(0.0, 0.5 * fit.covariance.trace()));
  }
  return fit;
}

Eigen::Vector4d analysis_populations(const Eigen::Matrix4cd& rho, double phase) {
  const double c = std::cos(kPi / 4.0), s = std::sin(kPi / 4.0);
  Eigen::Matrix2cd r;
  r << c, cd(0.0, -s) * std::polar(1.0, -phase), cd(0.0, -s) * std::polar(1.0, phase), c;
  Eigen::Matrix4cd u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = r(i, j) * r;
  const Eigen::Matrix4cd out = u * rho * u.adjoint();
  return out.diagonal().real();
}

double parity(const Eigen::Vector4d& p) { return p[0] + p[3] - p[1] - p[2]; }

std::vector<double> parity_scan(const Eigen::Matrix4cd& rho, std::span<const double> phases) {
  std::vector<double> out;
  out.reserve(phases.size());
  for (double phi : phases) out.push_back(parity(analysis_populations(rho, phi)));
  return out;
}

double bell_fidelity(double p00, double p11, double contrast) {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!ok(p00) || !ok(p11) || !ok(contrast)) throw InvalidArgument("bell_fidelity: inputs must lie in [0, 1]");
  if (p00 + p11 > 1.0 + 1e-12) throw InvalidArgument("bell_fidelity: P00 + P11 exceeds 1");
  return 0.5 * (p00 + p11 + contrast);
}

Eigen::Matrix4cd pair_state(const Eigen::MatrixXcd& rho, int q1, int q2) {
  const int dim = static_cast<int>(rho.rows());
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || rho.cols() != dim) throw InvalidArgument("pair_state: not a register state");
  if (q1 < 0 || q2 < 0 || q1 >= n || q2 >= n || q1 == q2) throw InvalidArgument("pair_state: bad qubit indices");
  const int b1 = 1 << (n - 1 - q1), b2 = 1 << (n - 1 - q2);
  auto pair_index = [&](int i) { return ((i & b1) ? 2 : 0) + ((i & b2) ? 1 : 0); };
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if ((i & ~(b1 | b2)) != (j & ~(b1 | b2))) continue;
      out(pair_index(i), pair_index(j)) += rho(i, j);
    }
  }
  return out;
}

double parity_contrast(const Eigen::Matrix4cd& rho) { return std::min(1.0, 2.0 * std::abs(rho(0, 3))); }

double state_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols())
    throw InvalidArgument("state_fidelity: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(rho);
  const Eigen::VectorXd lr = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd root = er.eigenvectors() * lr.asDiagonal() * er.eigenvectors().adjoint();
  const Eigen::MatrixXcd m = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double t = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

double bell_fidelity(const Eigen::Matrix4cd& rho) {
  double p00 = std::clamp(rho(0, 0).real(), 0.0, 1.0);
  double p11 = std::clamp(rho(3, 3).real(), 0.0, 1.0 - p00);
  return bell_fidelity(p00, p11, parity_contrast(rho));
}

DetectionModel detection_matrix(double f_bright, double f_dark, int qubits) {
  auto ok = [](double f) { return f > 0.5 && f <= 1.0; };
  if (!ok(f_bright) || !ok(f_dark)) throw InvalidArgument("detection_matrix: fidelities must lie in (0.5, 1]");
  if (qubits < 1 || qubits > 12) throw InvalidArgument("detection_matrix: qubit count must lie in [1, 12]");
  DetectionModel m;
  m.f_bright = f_bright;
  m.f_dark = f_dark;
  m.qubits = qubits;
  m.single << f_bright, 1.0 - f_dark, 1.0 - f_bright, f_dark;
  m.full = Eigen::MatrixXd::Ones(1, 1);
  for (int q = 0; q < qubits; ++q) {
    Eigen::MatrixXd next(m.full.rows() * 2, m.full.cols() * 2);
    for (int i = 0; i < m.full.rows(); ++i)
      for (int j = 0; j < m.full.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = m.full(i, j) * m.single;
    m.full = std::move(next);
  }
  return m;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

CorrectedPopulations correct_populations(const Eigen::VectorXd& measured, const DetectionModel& model) {
  const int n = model.qubits;
  const int dim = 1 << n;
  if (measured.size() != dim) throw InvalidArgument("correct_populations: population vector has the wrong size");
  if ((measured.array() < -1e-12).any() || std::abs(measured.sum() - 1.0) > 1e-6)
    throw InvalidArgument("correct_populations: measured populations must be a probability vector");
  const double det = model.single.determinant();
  if (std::abs(det) < 1e-6) throw ConditioningError("correct_populations: detection matrix is numerically singular");

  auto forward = [&](const Eigen::VectorXd& x) { return apply_kron(model.single, x, n); };
  CorrectedPopulations out;
  Eigen::VectorXd exact = apply_kron(model.single.inverse(), measured, n);
  if ((exact.array() >= -1e-14).all()) {
    out.populations = exact.cwiseMax(0.0);
    out.populations /= out.populations.sum();
    out.residual = (measured - forward(out.populations)).norm();
    return out;
  }

  // Accelerated projected gradient on the simplex.
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(model.single);
  const double lip = std::pow(svd.singularValues()[0], 2 * n);
  const Eigen::Matrix2d mt = model.single.transpose();
  Eigen::VectorXd x = project_to_simplex(exact), y = x, prev = x;
  double t = 1.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd grad = apply_kron(mt, forward(y) - measured, n);
    prev = x;
    x = project_to_simplex(y - grad / lip);
    double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x + ((t - 1.0) / tn) * (x - prev);
    t = tn;
    if ((x - prev).lpNorm<Eigen::Infinity>() < 1e-15) break;
  }
  out.populations = x;
  out.residual = (measured - forward(x)).norm();
  out.constrained = true;
  return out;
}

PhononFit fit_phonon_number(std::span<const double> times, std::span<const double> p1) {
  const int n = static_cast<int>(times.size());
  if (n != static_cast<int>(p1.size())) throw InvalidArgument("fit_phonon_number: size mismatch");
  if (n < 4) throw FitError("fit_phonon_number: need at least 4 samples");
  const double span = *std::max_element(times.begin(), times.end()) - *std::min_element(times.begin(), times.end());
  if (!(span > 0.0)) throw FitError("fit_phonon_number: times must span a nonzero interval");

  // Coarse scan of the Rabi frequency with a small thermal occupation.
  const double w_lo = kPi / span, w_hi = kPi * n / span;
  double best_w = w_lo, best_sse = INFINITY;
  for (int k = 0; k < 2000; ++k) {
    double w = w_lo * std::pow(w_hi / w_lo, k / 1999.0);
    double sse = 0;
    for (int i = 0; i < n; ++i) sse += std::pow(thermal_bsb(w, 0.05, times[i]) - p1[i], 2);
    if (sse < best_sse) {
      best_sse = sse;
      best_w = w;
    }
  }

  BsbFunctor f{times, p1, false, best_w};
  Eigen::VectorXd x(2);
  x << 1.0, 0.05;
  LmResult r = run_lm(f, x);
  PhononFit fit;
  if (r.x[1] <= 0.0) {
    f.pin_nbar = true;
    Eigen::VectorXd x1(1);
    x1 << r.x[0];
    r = run_lm(f, x1);
    fit.nbar_at_boundary = true;
  }
  if (r.status <= 0 || !r.x.allFinite()) throw FitError("fit_phonon_number: minimisation failed", r.residual.norm());
  const int p = f.inputs();
  const double rss = r.residual.squaredNorm();
  fit.residual_rms = std::sqrt(rss / n);
  fit.omega = r.x[0] * best_w;
  fit.nbar = fit.nbar_at_boundary ? 0.0 : r.x[1];
  Eigen::MatrixXd jtj = r.jacobian.transpose() * r.jacobian;
  if (n > p && jtj.determinant() > 0.0) {
    Eigen::MatrixXd cov = rss / (n - p) * jtj.inverse();
    fit.omega_error = std::sqrt(std::max(0.0, cov(0, 0))) * best_w;
    if (p == 2) fit.nbar_error = std::sqrt(std::max(0.0, cov(1, 1)));
  }
  if (fit.omega * span < kTwoPi) throw FitError("fit_phonon_number: data cover less than one Rabi period", fit.residual_rms);
  if (fit.residual_rms > 0.2) throw FitError("fit_phonon_number: fit did not converge", fit.residual_rms);
  return fit;
}

GateErrorFit error_per_gate(std::span<const double> gate_counts, std::span<const double> fidelity,
                            std::span<const double> weights) {
  const std::size_t n = gate_counts.size();
  if (n != fidelity.size() || (!weights.empty() && weights.size() != n))
    throw InvalidArgument("error_per_gate: size mismatch");
  if (n < 3) throw FitError("error_per_gate: need at least three gate counts");
  std::vector<double> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(n, 1.0);
  GateErrorFit out;
  WeightedLine lin = fit_line(gate_counts, fidelity, w);
  out.linear = -lin.slope;
  out.linear_error = lin.slope_se;
  out.intercept = lin.intercept + lin.slope;
  if (std::all_of(fidelity.begin(), fidelity.end(), [](double f) { return f > 0.5; })) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(fidelity[i] - 0.5);
    WeightedLine ex = fit_line(gate_counts, y, w);
    out.exponential = -0.5 * ex.slope;
    out.exponential_error = 0.5 * ex.slope_se;
  } else {
    out.exponential = NAN;
    out.exponential_error = NAN;
  }
  return out;
}

}  // namespace hgtrap
