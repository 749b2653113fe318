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

#include "hgtrap/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgtrap/errors.hpp"

namespace hgtrap {

namespace {

// Dimensionless energy gradient and Hessian for positions u (units of l):
//   V(u) = sum_i u_i^2 / 2 + sum_{i<k} 1 / |u_i - u_k|
Eigen::VectorXd potential_gradient(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd g = u;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double d = u[i] - u[k];
      g[i] -= std::copysign(1.0 / (d * d), d);
    }
  }
  return g;
}

Eigen::MatrixXd potential_hessian(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double c = 2.0 / std::pow(std::abs(u[i] - u[k]), 3);
      a(i, i) += c;
      a(i, k) -= c;
    }
  }
  return a;
}

bool strictly_increasing(const Eigen::VectorXd& u) {
  for (Eigen::Index i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) return false;
  }
  return true;
}

}  // namespace

void TrapConfig::validate() const {
  if (ion_count < 1) throw InvalidConfig("ion_count must be >= 1, got " + std::to_string(ion_count));
  if (!(axial_freq > 0.0) || !std::isfinite(axial_freq)) throw InvalidConfig("axial_freq must be > 0");
  if (!(ion_mass > 0.0) || !std::isfinite(ion_mass)) throw InvalidConfig("ion_mass must be > 0");
}

double IonChain::min_spacing() const {
  double best = 0.0;
  for (size_t i = 1; i < positions.size(); ++i) {
    double d = positions[i] - positions[i - 1];
    if (i == 1 || d < best) best = d;
  }
  return best;
}

double length_scale(const TrapConfig& trap) {
  if (!(trap.ion_mass > 0.0)) throw InvalidConfig("ion_mass must be > 0");
  if (!(trap.axial_freq > 0.0)) throw InvalidConfig("axial_freq must be > 0");
  double coulomb = kElementaryCharge * kElementaryCharge / (4.0 * kPi * kVacuumPermittivity);
  return std::cbrt(coulomb / (trap.ion_mass * trap.axial_freq * trap.axial_freq));
}

IonChain solve_equilibrium(const TrapConfig& trap) {
  trap.validate();
  const int n = trap.ion_count;
  IonChain out;
  out.length_scale = length_scale(trap);

  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = 2.0 * 0.63 * (i - 0.5 * (n - 1));

  Eigen::VectorXd g = potential_gradient(u);
  double gnorm = g.lpNorm<Eigen::Infinity>();
  constexpr int kMaxIter = 200;
  for (int it = 0; it < kMaxIter && gnorm > 1e-14; ++it) {
    Eigen::VectorXd step = potential_hessian(u).ldlt().solve(-g);
    double lambda = 1.0;
    bool accepted = false;
    for (int back = 0; back < 60; ++back, lambda *= 0.5) {
      Eigen::VectorXd trial = u + lambda * step;
      if (!strictly_increasing(trial)) continue;
      Eigen::VectorXd gt = potential_gradient(trial);
      double tn = gt.lpNorm<Eigen::Infinity>();
      if (tn < gnorm || tn < 1e-13) {
        u = trial;
        g = gt;
        gnorm = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(gnorm < 1e-10)) throw NumericError("equilibrium solver did not converge", gnorm);

  // Remove the last few ulps of asymmetry; the exact solution is mirror symmetric.
  for (int i = 0; i < n / 2; ++i) {
    double m = 0.5 * (u[n - 1 - i] - u[i]);
    u[i] = -m;
    u[n - 1 - i] = m;
  }
  if (n % 2 == 1) u[n / 2] = 0.0;

  out.positions.resize(n);
  for (int i = 0; i < n; ++i) out.positions[i] = u[i] * out.length_scale;
  return out;
}

ModeSet normal_modes(const IonChain& chain, const TrapConfig& trap) {
  trap.validate();
  const int n = chain.size();
  if (n != trap.ion_count) throw InvalidArgument("chain size does not match trap ion_count");
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = chain.positions[i] / chain.length_scale;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(potential_hessian(u));
  if (eig.info() != Eigen::Success) throw UnstableConfiguration("axial Hessian eigensolve failed");

  ModeSet modes;
  modes.eigenvectors = eig.eigenvectors();
  modes.frequencies.resize(n);
  modes.zero_point.resize(n);
  for (int m = 0; m < n; ++m) {
    double lam = eig.eigenvalues()[m];
    if (!(lam > 0.0)) throw UnstableConfiguration("axial Hessian has non-positive eigenvalue " + std::to_string(lam));
    double nu = trap.axial_freq * std::sqrt(lam);
    modes.frequencies[m] = nu;
    modes.zero_point[m] = std::sqrt(kHbar / (2.0 * trap.ion_mass * nu));

    // Exact nodes of symmetric modes come out at the 1e-17 level.
    auto col = modes.eigenvectors.col(m);
    for (int j = 0; j < n; ++j) {
      if (std::abs(col[j]) < 1e-13) col[j] = 0.0;
    }
    // Sign convention: first non-zero participation is positive.
    for (int j = 0; j < n; ++j) {
      if (col[j] != 0.0) {
        if (col[j] < 0.0) col *= -1.0;
        break;
      }
    }
  }
  return modes;
}

Eigen::MatrixXd lamb_dicke_matrix(const ModeSet& modes, std::span<const double> weights, double kappa) {
  const int n = modes.size();
  if (static_cast<int>(weights.size()) != n) {
    throw InvalidArgument("lamb_dicke_matrix: expected " + std::to_string(n) + " weights, got " +
                          std::to_string(weights.size()));
  }
  Eigen::MatrixXd eta(n, n);
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(weights[j]) || weights[j] < 0.0) throw InvalidArgument("gradient weights must be finite and >= 0");
    for (int m = 0; m < n; ++m) eta(j, m) = weights[j] * modes.eigenvectors(j, m) * modes.zero_point[m] * kappa;
  }
  return eta;
}

ChainSolution solve_chain(const TrapConfig& trap) {
  ChainSolution s;
  s.chain = solve_equilibrium(trap);
  s.modes = normal_modes(s.chain, trap);
  return s;
}

}  // namespace hgtrap
