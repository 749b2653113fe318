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

#include <stdexcept>
#include <string>

namespace hgtrap {

/// Invalid trap, beam, gate or scenario parameters.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mismatched shapes or out-of-domain arguments to a pure function.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// The axial Hessian is not positive definite.
class UnstableConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A motional mode populated the top of its Fock truncation.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int mode, double edge_population)
      : std::runtime_error(what), mode_(mode), edge_population_(edge_population) {}
  int mode() const { return mode_; }
  double edge_population() const { return edge_population_; }

 private:
  int mode_;
  double edge_population_;
};

/// The adaptive integrator could not satisfy its step control.
class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gate whose accumulated two-qubit phase vanishes cannot be calibrated.
class DegenerateGate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A least-squares fit was underdetermined or did not converge.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Ill-conditioned detection model.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgtrap
