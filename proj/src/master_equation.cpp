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

#include "hgtrap/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "hgtrap/errors.hpp"
#include "hgtrap/kernels.hpp"
#include "hgtrap/parallel.hpp"
#include "hgtrap/trajectory.hpp"

namespace hgtrap {

namespace {

using cd = std::complex<double>;
using State = std::vector<double>;
namespace odeint = boost::numeric::odeint;

constexpr int kMaxDimension = 3000;
constexpr double kEdgeTolerance = 1e-6;

// Operator with at most one nonzero per row: (O x)[r] = w[r] x[src[r]].
struct RowMap {
  std::vector<int> src;
  std::vector<double> w;
};

struct HamiltonianTerm {
  int ion_row;
  int mode_col;
  bool raising;  // X a^dag, else X a
  RowMap map;
};

struct Jump {
  double rate;
  RowMap map;
};

class Layout {
 public:
  Layout(std::vector<int> ion_dims, std::vector<int> mode_dims) : ion_dims_(std::move(ion_dims)), mode_dims_(std::move(mode_dims)) {
    std::vector<int> dims = ion_dims_;
    dims.insert(dims.end(), mode_dims_.begin(), mode_dims_.end());
    dim_ = 1;
    for (int d : dims) dim_ *= d;
    register_dim_ = 1;
    for (int d : ion_dims_) register_dim_ *= d;
    stride_.assign(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) stride_[k] = stride_[k + 1] * dims[k + 1];
    digits_.assign(dims.size(), std::vector<int>(dim_));
    for (int r = 0; r < dim_; ++r)
      for (std::size_t k = 0; k < dims.size(); ++k) digits_[k][r] = (r / stride_[k]) % dims[k];
  }

  int dim() const { return dim_; }
  int register_dim() const { return register_dim_; }
  int motion_dim() const { return dim_ / register_dim_; }
  int ions() const { return static_cast<int>(ion_dims_.size()); }
  int modes() const { return static_cast<int>(mode_dims_.size()); }
  int ion_dim(int i) const { return ion_dims_[i]; }
  int levels(int c) const { return mode_dims_[c]; }
  int ion_digit(int i, int r) const { return digits_[i][r]; }
  int mode_digit(int c, int r) const { return digits_[ions() + c][r]; }
  int ion_stride(int i) const { return stride_[i]; }
  int mode_stride(int c) const { return stride_[ions() + c]; }

 private:
  std::vector<int> ion_dims_, mode_dims_, stride_;
  std::vector<std::vector<int>> digits_;
  int dim_ = 1;
  int register_dim_ = 1;
};

RowMap empty_map(int dim) {
  RowMap m;
  m.src.resize(dim);
  for (int r = 0; r < dim; ++r) m.src[r] = r;
  m.w.assign(dim, 0.0);
  return m;
}

// X_i a_c (raising = false) or X_i a_c^dag.
RowMap spin_motion_map(const Layout& L, int i, int c, bool raising) {
  RowMap m = empty_map(L.dim());
  for (int r = 0; r < L.dim(); ++r) {
    int q = L.ion_digit(i, r);
    if (q > 1) continue;
    int n = L.mode_digit(c, r);
    int flip = (1 - q) - q;
    int src;
    double w;
    if (raising) {
      if (n == 0) continue;
      src = r + flip * L.ion_stride(i) - L.mode_stride(c);
      w = std::sqrt(static_cast<double>(n));
    } else {
      if (n + 1 >= L.levels(c)) continue;
      src = r + flip * L.ion_stride(i) + L.mode_stride(c);
      w = std::sqrt(static_cast<double>(n + 1));
    }
    m.src[r] = src;
    m.w[r] = w;
  }
  return m;
}

RowMap ladder_map(const Layout& L, int c, bool raising) {
  RowMap m = empty_map(L.dim());
  for (int r = 0; r < L.dim(); ++r) {
    int n = L.mode_digit(c, r);
    if (raising) {
      if (n == 0) continue;
      m.src[r] = r - L.mode_stride(c);
      m.w[r] = std::sqrt(static_cast<double>(n));
    } else {
      if (n + 1 >= L.levels(c)) continue;
      m.src[r] = r + L.mode_stride(c);
      m.w[r] = std::sqrt(static_cast<double>(n + 1));
    }
  }
  return m;
}

// |leak><1| on ion i.
RowMap leak_map(const Layout& L, int i) {
  RowMap m = empty_map(L.dim());
  for (int r = 0; r < L.dim(); ++r) {
    if (L.ion_digit(i, r) != 2) continue;
    m.src[r] = r - L.ion_stride(i);
    m.w[r] = 1.0;
  }
  return m;
}

double z_value(int digit) { return digit == 1 ? -1.0 : 1.0; }

struct ShotOutput {
  std::vector<std::vector<double>> populations;
  std::vector<std::vector<double>> occupation;
  std::vector<double> trace_error;
  std::vector<Eigen::MatrixXcd> gate_states;
  Eigen::MatrixXcd full;
  long steps = 0;

  void scale(double w) {
    for (auto& row : populations)
      for (double& v : row) v *= w;
    for (auto& row : occupation)
      for (double& v : row) v *= w;
    for (auto& g : gate_states) g *= w;
    full *= w;
  }
};

class LindbladSystem {
 public:
  LindbladSystem(const ModeDrive& drive, const NoiseModel& noise, const std::vector<int>& levels, bool pure)
      : drive_(drive), layout_(ion_dims(drive, noise), levels), pure_(pure) {
    const int D = layout_.dim();
    for (int i = 0; i < layout_.ions(); ++i) {
      for (int c = 0; c < layout_.modes(); ++c) {
        if (drive.coupling(i, c) == 0.0) continue;
        terms_.push_back({i, c, false, spin_motion_map(layout_, i, c, false)});
        terms_.push_back({i, c, true, spin_motion_map(layout_, i, c, true)});
      }
    }
    if (pure_) return;
    for (int c = 0; c < layout_.modes(); ++c) {
      double rate = noise.heating_rate(drive.modes[c]);
      if (rate <= 0.0) continue;
      jumps_.push_back({rate, ladder_map(layout_, c, true)});
      if (noise.heating_bath == HeatingBath::up_down) jumps_.push_back({rate, ladder_map(layout_, c, false)});
    }
    if (noise.has_lifetime()) {
      for (int row : drive.addressed) jumps_.push_back({1.0 / noise.metastable_lifetime, leak_map(layout_, row)});
    }
    std::vector<double> loss(D, 0.0);
    for (const Jump& j : jumps_)
      for (int r = 0; r < D; ++r)
        if (j.map.w[r] != 0.0) loss[j.map.src[r]] += j.rate * j.map.w[r] * j.map.w[r];
    std::vector<double> ztot(D, 0.0);
    for (int r = 0; r < D; ++r)
      for (int i = 0; i < layout_.ions(); ++i) ztot[r] += z_value(layout_.ion_digit(i, r));
    const double gamma = noise.has_dephasing() ? 1.0 / noise.qubit_t2 : 0.0;
    rates_.assign(std::size_t(D) * D, 0.0);
    for (int r = 0; r < D; ++r) {
      for (int c = 0; c < D; ++c) {
        double v = -0.5 * (loss[r] + loss[c]);
        if (gamma > 0.0) {
          if (noise.dephasing == DephasingModel::correlated) {
            double dz = ztot[r] - ztot[c];
            v -= 0.25 * gamma * dz * dz;
          } else {
            for (int i = 0; i < layout_.ions(); ++i) {
              double dz = z_value(layout_.ion_digit(i, r)) - z_value(layout_.ion_digit(i, c));
              v -= 0.25 * gamma * dz * dz;
            }
          }
        }
        rates_[std::size_t(r) * D + c] = v;
      }
    }
  }

  const Layout& layout() const { return layout_; }
  bool pure() const { return pure_; }
  std::size_t state_size() const {
    std::size_t D = layout_.dim();
    return 2 * (pure_ ? D : D * D);
  }

  void set_coupling(const Eigen::MatrixXd& c) { coupling_ = c; }

  // Row r of the Liouvillian, accumulated in cache:
  //   -i (H rho)[r] + i (rho H)[r] + (R o rho)[r] + sum_j rate_j w_j[r] (L_j rho L_j^dag)[r].
  // rho H is taken row-wise from H = sum_t C_t^* O_t^dag and
  // (rho O^dag)[r][c] = w[c] rho[r][src[c]].
  void operator()(const State& x, State& dxdt, double t) {
    const auto& k = kernels::active();
    const int D = layout_.dim();
    const cd* rho = reinterpret_cast<const cd*>(x.data());
    cd* out = reinterpret_cast<cd*>(dxdt.data());
    const double f = drive_.envelope.value(t);
    coeff_.resize(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) coeff_[i] = f == 0.0 ? cd(0.0) : term_coefficient(terms_[i], f, t);
    if (pure_) {
      std::fill(out, out + D, cd(0.0));
      if (f == 0.0) return;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        const RowMap& m = terms_[i].map;
        k.zaxpy_gather(D, coeff_[i] * cd(0.0, -1.0), m.w.data(), m.src.data(), rho, out);
      }
      return;
    }
    for (int r = 0; r < D; ++r) {
      const cd* row = rho + std::size_t(r) * D;
      cd* o = out + std::size_t(r) * D;
      k.hadamard(D, rates_.data() + std::size_t(r) * D, row, o);
      if (f != 0.0) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
          const RowMap& m = terms_[i].map;
          const double w = m.w[r];
          if (w != 0.0) k.zaxpy(D, coeff_[i] * cd(0.0, -w), rho + std::size_t(m.src[r]) * D, o);
          k.zaxpy_gather(D, std::conj(coeff_[i]) * cd(0.0, 1.0), m.w.data(), m.src.data(), row, o);
        }
      }
      for (const Jump& j : jumps_) {
        const double w = j.map.w[r];
        if (w == 0.0) continue;
        k.zaxpy_gather(D, cd(j.rate * w), j.map.w.data(), j.map.src.data(), rho + std::size_t(j.map.src[r]) * D, o);
      }
    }
  }

 private:
  static std::vector<int> ion_dims(const ModeDrive& drive, const NoiseModel& noise) {
    std::vector<int> dims(drive.ion_count(), 2);
    if (noise.has_lifetime())
      for (int row : drive.addressed) dims[row] = 3;
    return dims;
  }

  cd term_coefficient(const HamiltonianTerm& term, double f, double t) const {
    double g = coupling_(term.ion_row, term.mode_col) * f;
    double phase = drive_.detuning[term.mode_col] * t;
    return std::polar(g, term.raising ? -phase : phase);
  }

  const ModeDrive& drive_;
  Layout layout_;
  bool pure_;
  std::vector<HamiltonianTerm> terms_;
  std::vector<Jump> jumps_;
  std::vector<double> rates_;
  std::vector<cd> coeff_;
  Eigen::MatrixXd coupling_;
};

// Register state with the leaked level read as |0>.
Eigen::MatrixXcd register_state(const Layout& L, const cd* x, bool pure) {
  const int n = L.ions();
  const int Q = L.register_dim();
  const int M = L.motion_dim();
  const int D = L.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
  std::vector<int> qubit(Q), leak(Q);
  for (int a = 0; a < Q; ++a) {
    int r = a * M;
    int bits = 0, mask = 0;
    for (int i = 0; i < n; ++i) {
      int d = L.ion_digit(i, r);
      bits = (bits << 1) | (d == 1 ? 1 : 0);
      mask = (mask << 1) | (d == 2 ? 1 : 0);
    }
    qubit[a] = bits;
    leak[a] = mask;
  }
  for (int a = 0; a < Q; ++a) {
    for (int b = 0; b < Q; ++b) {
      if (leak[a] != leak[b]) continue;
      cd acc = 0.0;
      if (pure) {
        for (int m = 0; m < M; ++m) acc += x[a * M + m] * std::conj(x[b * M + m]);
      } else {
        for (int m = 0; m < M; ++m) acc += x[std::size_t(a * M + m) * D + (b * M + m)];
      }
      out(qubit[a], qubit[b]) += acc;
    }
  }
  return out;
}

double diag_entry(const cd* x, int r, int D, bool pure) {
  return pure ? std::norm(x[r]) : x[std::size_t(r) * D + r].real();
}

ShotOutput run_shot(LindbladSystem& sys, const ModeDrive& drive, const NoiseModel& noise, const EvolveOptions& opt) {
  const Layout& L = sys.layout();
  const int D = L.dim();
  const bool pure = sys.pure();
  State x(sys.state_size(), 0.0);
  cd* psi = reinterpret_cast<cd*>(x.data());

  // Initial register basis state.
  int reg = 0;
  for (int i = 0; i < L.ions(); ++i) {
    int bit = opt.initial_bits.empty() ? 0 : opt.initial_bits[i];
    reg += bit * L.ion_stride(i);
  }
  if (pure) {
    psi[reg] = 1.0;
  } else {
    std::vector<std::vector<double>> p(L.modes());
    for (int c = 0; c < L.modes(); ++c) {
      double nb = noise.nbar(drive.modes[c]);
      double q = nb / (nb + 1.0), norm = 0.0;
      p[c].resize(L.levels(c));
      for (int n = 0; n < L.levels(c); ++n) norm += (p[c][n] = std::pow(q, n) / (nb + 1.0));
      for (double& v : p[c]) v /= norm;
    }
    for (int m = 0; m < L.motion_dim(); ++m) {
      int r = reg + m;
      double w = 1.0;
      for (int c = 0; c < L.modes(); ++c) w *= p[c][L.mode_digit(c, r)];
      psi[std::size_t(r) * D + r] = w;
    }
  }

  ShotOutput out;
  const double tau = drive.envelope.total_duration;
  const int samples = std::max(1, opt.samples_per_gate);
  auto observe = [&](const State& s) {
    const cd* y = reinterpret_cast<const cd*>(s.data());
    double trace = 0.0;
    std::vector<double> occ(L.modes(), 0.0), edge(L.modes(), 0.0);
    for (int r = 0; r < D; ++r) {
      double p = diag_entry(y, r, D, pure);
      trace += p;
      for (int c = 0; c < L.modes(); ++c) {
        int n = L.mode_digit(c, r);
        occ[c] += n * p;
        if (n >= L.levels(c) - 2) edge[c] += p;
      }
    }
    for (int c = 0; c < L.modes(); ++c) {
      if (edge[c] > kEdgeTolerance) {
        throw TruncationError("mode " + std::to_string(drive.modes[c]) + " reached its Fock truncation (" +
                                  std::to_string(L.levels(c)) + " levels, edge population " + std::to_string(edge[c]) + ")",
                              c, edge[c]);
      }
    }
    Eigen::MatrixXcd rq = register_state(L, y, pure);
    std::vector<double> pops(rq.rows());
    for (int k = 0; k < rq.rows(); ++k) pops[k] = std::clamp(rq(k, k).real(), 0.0, 1.0);
    out.populations.push_back(std::move(pops));
    out.occupation.push_back(std::move(occ));
    out.trace_error.push_back(std::abs(trace - 1.0));
  };

  std::vector<double> local(samples + 1);
  for (int s = 0; s <= samples; ++s) local[s] = tau * s / samples;
  local.back() = tau;
  for (int rep = 0; rep < std::max(1, opt.repetitions); ++rep) {
    auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
    bool first = true;
    auto observer = [&](const State& s, double) {
      if (first && rep > 0) {
        first = false;
        return;
      }
      first = false;
      observe(s);
    };
    try {
      out.steps += static_cast<long>(odeint::integrate_times(stepper, std::ref(sys), x, local.begin(), local.end(),
                                                             tau / samples / 4.0, observer,
                                                             odeint::max_step_checker(200000)));
    } catch (const odeint::step_adjustment_error& e) {
      throw IntegratorError(std::string("step size control failed: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
      throw IntegratorError(std::string("integrator made no progress: ") + e.what());
    }
    out.gate_states.push_back(register_state(L, psi, pure));
  }
  if (pure) {
    Eigen::Map<const Eigen::VectorXcd> v(psi, D);
    out.full = v * v.adjoint();
  } else {
    out.full = Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(psi, D, D);
  }
  return out;
}

SimResult evolve_fixed(const ModeDrive& drive, const NoiseModel& noise, const EvolveOptions& opt,
                       const std::vector<int>& levels) {
  const bool pure = noise.is_closed() && !opt.force_density_matrix;
  std::vector<PointingSample> couplings;
  if (noise.has_pointing()) {
    couplings = pointing_couplings(drive, noise.pointing_sigma, noise.pointing_shots, opt.seed, noise.pointing_sampling);
  } else {
    couplings.push_back({drive.coupling, 1.0});
  }
  const int shots = static_cast<int>(couplings.size());

  SimResult res;
  res.ions = drive.ions;
  res.modes = drive.modes;
  const int batch = std::max(1, worker_count());
  ShotOutput acc;
  int dimension = 0;
  for (int start = 0; start < shots; start += batch) {
    const int count = std::min(batch, shots - start);
    std::vector<ShotOutput> outs(count);
    parallel_for(count, [&](int i) {
      LindbladSystem sys(drive, noise, levels, pure);
      if (sys.layout().dim() > kMaxDimension)
        throw InvalidArgument("evolve_master_equation: Hilbert-space dimension " + std::to_string(sys.layout().dim()) +
                              " exceeds the solver limit");
      sys.set_coupling(couplings[start + i].coupling);
      outs[i] = run_shot(sys, drive, noise, opt);
      outs[i].scale(couplings[start + i].weight);
      if (i == 0) dimension = sys.layout().dim();
    });
    for (ShotOutput& o : outs) {
      if (acc.populations.empty()) {
        acc = std::move(o);
        continue;
      }
      for (std::size_t t = 0; t < acc.populations.size(); ++t) {
        for (std::size_t k = 0; k < acc.populations[t].size(); ++k) acc.populations[t][k] += o.populations[t][k];
        for (std::size_t c = 0; c < acc.occupation[t].size(); ++c) acc.occupation[t][c] += o.occupation[t][c];
        acc.trace_error[t] = std::max(acc.trace_error[t], o.trace_error[t]);
      }
      for (std::size_t g = 0; g < acc.gate_states.size(); ++g) acc.gate_states[g] += o.gate_states[g];
      acc.full += o.full;
      acc.steps += o.steps;
    }
  }

  const double tau = drive.envelope.total_duration;
  const int samples = std::max(1, opt.samples_per_gate);
  const int pair_a = drive.addressed.empty() ? -1 : drive.addressed.front();
  const int pair_b = drive.addressed.size() > 1 ? drive.addressed[1] : -1;
  std::vector<UnitIntegrals> closing(drive.mode_count());
  for (int c = 0; c < drive.mode_count(); ++c) closing[c] = unit_integrals(drive.envelope, drive.detuning[c], tau);
  for (int rep = 0; rep < std::max(1, opt.repetitions); ++rep) {
    for (int s = rep == 0 ? 0 : 1; s <= samples; ++s) {
      double tl = s == samples ? tau : tau * s / samples;
      res.time.push_back(rep * tau + tl);
      std::vector<cd> disp(drive.mode_count());
      double theta = 0.0;
      for (int c = 0; c < drive.mode_count(); ++c) {
        UnitIntegrals u = unit_integrals(drive.envelope, drive.detuning[c], tl);
        disp[c] = drive.coupling.col(c).sum() * (u.displacement + static_cast<double>(rep) * closing[c].displacement);
        if (pair_b >= 0) {
          theta += 2.0 * drive.coupling(pair_a, c) * drive.coupling(pair_b, c) *
                   (u.phase + rep * closing[c].phase);
        }
      }
      res.displacement.push_back(std::move(disp));
      res.two_qubit_phase.push_back(theta);
    }
  }
  res.populations = std::move(acc.populations);
  res.mode_occupation = std::move(acc.occupation);
  res.gate_states = std::move(acc.gate_states);
  res.final_state = std::move(acc.full);
  res.qubit_state = res.gate_states.back();

  TraceLog& log = res.trace_log;
  log.max_trace_error = acc.trace_error.empty() ? 0.0 : *std::max_element(acc.trace_error.begin(), acc.trace_error.end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> q(res.qubit_state, Eigen::EigenvaluesOnly);
  log.min_eigenvalue = q.eigenvalues().minCoeff();
  if (res.final_state.rows() <= 600) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> full(res.final_state, Eigen::EigenvaluesOnly);
    log.min_eigenvalue = std::min(log.min_eigenvalue, full.eigenvalues().minCoeff());
  }
  log.final_purity = res.final_state.cwiseAbs2().sum();
  log.steps = acc.steps;
  log.shots = shots;
  log.dimension = dimension;
  log.pure_state = pure;
  log.fock_levels = levels;
  return res;
}

}  // namespace

std::vector<int> default_fock_levels(const ModeDrive& drive, const NoiseModel& noise, int repetitions) {
  std::vector<double> amax = max_displacement(drive, 1);
  const int reps = std::max(1, repetitions);
  const double margin = std::sqrt(static_cast<double>(reps));
  std::vector<int> out(drive.mode_count());
  for (int c = 0; c < drive.mode_count(); ++c) {
    // Heating adds roughly ndot * duration quanta over the run.
    double nb = noise.nbar(drive.modes[c]) + noise.heating_rate(drive.modes[c]) * drive.envelope.total_duration * reps;
    double reach = amax[c] * margin;
    if (amax[c] < 0.1) {
      out[c] = std::max(4, static_cast<int>(std::ceil(3.0 + 4.0 * nb + 6.0 * reach)));
    } else {
      out[c] = std::max(15, static_cast<int>(std::ceil(8.0 * (nb + 1.0) + 6.0 * reach)));
    }
  }
  return out;
}

SimResult evolve_master_equation(const ModeDrive& drive, const NoiseModel& noise, const EvolveOptions& options) {
  if (drive.ion_count() == 0) throw InvalidArgument("evolve_master_equation: no driven ions");
  if (static_cast<int>(drive.detuning.size()) != drive.mode_count() || drive.coupling.rows() != drive.ion_count() ||
      drive.coupling.cols() != drive.mode_count())
    throw InvalidArgument("evolve_master_equation: inconsistent drive");
  if (!options.initial_bits.empty() && static_cast<int>(options.initial_bits.size()) != drive.ion_count())
    throw InvalidArgument("evolve_master_equation: initial_bits needs one entry per driven ion");
  drive.envelope.validate();
  std::vector<int> levels = options.fock_levels.empty() ? default_fock_levels(drive, noise, options.repetitions)
                                                        : options.fock_levels;
  if (levels.size() == 1) levels.assign(drive.mode_count(), levels[0]);
  if (static_cast<int>(levels.size()) != drive.mode_count())
    throw InvalidArgument("evolve_master_equation: fock_levels needs one entry per included mode");
  for (int l : levels)
    if (l < 3) throw InvalidArgument("evolve_master_equation: at least 3 Fock levels per mode");
  for (int attempt = 0;; ++attempt) {
    try {
      return evolve_fixed(drive, noise, options, levels);
    } catch (const TruncationError& e) {
      if (attempt >= options.max_doublings) throw;
      levels[e.mode()] *= 2;
    }
  }
}

SimResult detuned_sdf_oscillation(const GateSpec& gate, const ModeSet& modes, const NoiseModel& noise,
                                  const EvolveOptions& options) {
  if (gate.ion_a != gate.ion_b) throw InvalidArgument("detuned_sdf_oscillation: expects a single addressed ion");
  const int med = gate.mediator_mode;
  ModeDrive drive = make_drive(gate, modes, std::span<const int>(&med, 1));
  return evolve_master_equation(drive, noise, options);
}

}  // namespace hgtrap
