// Copyright 2026 The qssvm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qssvm/hhl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "qssvm/error.hpp"

namespace qssvm {
namespace {

using Index = Eigen::Index;

constexpr double kPhaseSlack = 1e-10;
// Branches whose squared weight is below this are treated as empty when
// checking rotation amplitudes.
constexpr double kNegligibleWeight = 1e-24;
constexpr double kAmplitudeSlack = 1e-12;

struct Spectrum {
  Eigen::VectorXd values;
  MatrixXc vectors;
};

Spectrum spectrum_of(const ComplexMatrix& a) {
  require(a.is_square(), ErrorKind::kLayout, "operator must be square");
  const auto eig = hermitian_eig(ComplexMatrix(symmetrized(a.data())));
  return {eig.eigenvalues, eig.eigenvectors.data()};
}

double resolve_time(const Spectrum& s, const QPEConfig& cfg) {
  if (cfg.evolution_time > 0.0) return cfg.evolution_time;
  const double lmax = s.values.maxCoeff();
  return lmax > 1e-12 ? std::numbers::pi / lmax : std::numbers::pi;
}

// exp(i A tau) from the spectral decomposition.
MatrixXc spectral_unitary(const Spectrum& s, double tau) {
  VectorXc phases(s.values.size());
  for (Index i = 0; i < s.values.size(); ++i)
    phases(i) = std::exp(Complex(0.0, s.values(i) * tau));
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

// Row k of the returned matrix holds the system amplitudes for clock value k.
MatrixXc as_clock_rows(const VectorXc& v, std::size_t clock, std::size_t m) {
  MatrixXc out(static_cast<Index>(clock), static_cast<Index>(m));
  for (Index k = 0; k < out.rows(); ++k)
    for (Index i = 0; i < out.cols(); ++i) out(k, i) = v(k * out.cols() + i);
  return out;
}

VectorXc flatten_rows(const MatrixXc& rows) {
  VectorXc out(rows.size());
  for (Index k = 0; k < rows.rows(); ++k)
    for (Index i = 0; i < rows.cols(); ++i) out(k * rows.cols() + i) = rows(k, i);
  return out;
}

// Controlled exp(i A t0 2^q) from every clock bit q, with the sign of the
// exponent set by `direction`.
void apply_controlled_powers(MatrixXc& rows, const Spectrum& s, double t0, std::size_t clock_qubits,
                             double direction) {
  for (std::size_t q = 0; q < clock_qubits; ++q) {
    const double tau = direction * t0 * static_cast<double>(std::size_t{1} << q);
    const MatrixXc u = spectral_unitary(s, tau);
    for (Index k = 0; k < rows.rows(); ++k)
      if ((static_cast<std::size_t>(k) >> q) & 1U) rows.row(k) = (u * rows.row(k).transpose()).transpose();
  }
}

// Clock-register Fourier transform, column by column. `inverse` selects the
// inverse QFT, (1/sqrt N) sum_k exp(-2 pi i j k / N).
void clock_fourier(MatrixXc& rows, bool inverse) {
  Eigen::FFT<double> fft;
  const double n = static_cast<double>(rows.rows());
  VectorXc in(rows.rows());
  VectorXc out(rows.rows());
  for (Index c = 0; c < rows.cols(); ++c) {
    in = rows.col(c);
    if (inverse) {
      fft.fwd(out, in);
      rows.col(c) = out / std::sqrt(n);
    } else {
      fft.inv(out, in);
      rows.col(c) = out * std::sqrt(n);
    }
  }
}

double decoded(std::size_t k, std::size_t clock, double t0) {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(clock) * t0);
}

FlaggedState rotate(const EntangledState& e, const std::vector<double>& success_amplitude) {
  const std::size_t n = e.clock_size();
  const std::size_t m = e.system_dimension();
  const VectorXc& in = e.state.amplitudes();
  VectorXc out = VectorXc::Zero(static_cast<Index>(2 * n * m));
  const Index half = static_cast<Index>(n * m);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = success_amplitude[k];
    const double fail = std::sqrt(std::max(0.0, 1.0 - a * a));
    for (std::size_t i = 0; i < m; ++i) {
      const Index idx = static_cast<Index>(k * m + i);
      out(idx) = a * in(idx);
      out(half + idx) = fail * in(idx);
    }
  }
  return {StateVector(std::move(out), TensorLayout{2, n, m}), e.evolution_time, e.clock_qubits};
}

std::vector<double> branch_weights(const EntangledState& e) {
  const std::size_t n = e.clock_size();
  const std::size_t m = e.system_dimension();
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < m; ++i) w[k] += std::norm(e.state.amplitudes()(static_cast<Index>(k * m + i)));
  return w;
}

std::vector<double> retained(const Eigen::VectorXd& values, double threshold) {
  std::vector<double> out;
  for (Index i = 0; i < values.size(); ++i)
    if (values(i) >= threshold) out.push_back(values(i));
  return out;
}

// The density-matrix emulation loses the global phase; pick the one with
// a real, positive largest-magnitude amplitude.
VectorXc fix_global_phase(VectorXc v) {
  Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  const double mag = std::abs(v(best));
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
  return v;
}

}  // namespace

void QPEConfig::validate() const {
  require(clock_qubits >= 2 && clock_qubits <= 12, ErrorKind::kConfig,
          "clock_qubits must be in [2, 12], got " + std::to_string(clock_qubits));
  require(std::isfinite(evolution_time), ErrorKind::kConfig, "evolution_time must be finite");
}

double EntangledState::decoded_eigenvalue(std::size_t k) const {
  return decoded(k, clock_size(), evolution_time);
}

double resolve_evolution_time(const ComplexMatrix& a_hat, const QPEConfig& cfg) {
  return resolve_time(spectrum_of(a_hat), cfg);
}

EntangledState phase_estimation(const ComplexMatrix& a_hat, const StateVector& b,
                                const QPEConfig& cfg) {
  cfg.validate();
  require(cfg.backend == EvolutionBackend::kExact, ErrorKind::kConfig,
          "phase estimation with unitary evolution needs the exact backend");
  require(a_hat.rows() == b.dimension(), ErrorKind::kLayout,
          "operator is " + std::to_string(a_hat.rows()) + "-dimensional, state is " +
              std::to_string(b.dimension()));
  const Spectrum s = spectrum_of(a_hat);
  const double t0 = resolve_time(s, cfg);
  for (Index i = 0; i < s.values.size(); ++i) {
    const double phase = s.values(i) * t0 / (2.0 * std::numbers::pi);
    require(phase >= -kPhaseSlack && phase < 1.0, ErrorKind::kConfig,
            "eigenvalue " + std::to_string(s.values(i)) + " maps to phase " +
                std::to_string(phase) + " outside [0, 1); rescale the evolution time");
  }

  const std::size_t n = cfg.clock_size();
  const std::size_t m = b.dimension();
  MatrixXc rows(static_cast<Index>(n), static_cast<Index>(m));
  const double h = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index k = 0; k < rows.rows(); ++k) rows.row(k) = h * b.amplitudes().transpose();
  apply_controlled_powers(rows, s, t0, cfg.clock_qubits, 1.0);
  clock_fourier(rows, true);
  return {StateVector(flatten_rows(rows), TensorLayout{n, m}), t0, cfg.clock_qubits};
}

FlaggedState conditional_rotation_invert(const EntangledState& entangled, double c_const,
                                         double sigma_thresh) {
  require(sigma_thresh > 0.0, ErrorKind::kParameter, "sigma_thresh must be positive");
  require(c_const > 0.0, ErrorKind::kParameter, "rotation constant must be positive");
  const auto weights = branch_weights(entangled);
  std::vector<double> amp(entangled.clock_size(), 0.0);
  for (std::size_t k = 0; k < amp.size(); ++k) {
    const double lambda = entangled.decoded_eigenvalue(k);
    if (lambda < sigma_thresh || lambda <= 0.0) continue;
    amp[k] = c_const / lambda;
    if (weights[k] > kNegligibleWeight && amp[k] > 1.0 + kAmplitudeSlack)
      fail(ErrorKind::kAmplitudeOverflow,
           "rotation constant " + std::to_string(c_const) + " exceeds retained eigenvalue " +
               std::to_string(lambda));
    amp[k] = std::min(amp[k], 1.0);
  }
  return rotate(entangled, amp);
}

FlaggedState conditional_rotation_multiply(const EntangledState& entangled, double scale) {
  require(scale > 0.0, ErrorKind::kParameter, "rotation scale must be positive");
  const auto weights = branch_weights(entangled);
  std::vector<double> amp(entangled.clock_size(), 0.0);
  for (std::size_t k = 0; k < amp.size(); ++k) {
    amp[k] = scale * entangled.decoded_eigenvalue(k);
    if (weights[k] > kNegligibleWeight && amp[k] > 1.0 + kAmplitudeSlack)
      fail(ErrorKind::kAmplitudeOverflow,
           "decoded eigenvalue " + std::to_string(entangled.decoded_eigenvalue(k)) +
               " times scale exceeds 1");
    amp[k] = std::min(amp[k], 1.0);
  }
  return rotate(entangled, amp);
}

HHLResult uncompute_and_postselect(const FlaggedState& flagged, const ComplexMatrix& a_hat) {
  const std::size_t n = flagged.clock_size();
  const std::size_t m = flagged.system_dimension();
  require(a_hat.rows() == m, ErrorKind::kLayout, "operator does not match the flagged state");
  const Spectrum s = spectrum_of(a_hat);
  MatrixXc rows = as_clock_rows(flagged.state.amplitudes().head(static_cast<Index>(n * m)), n, m);
  clock_fourier(rows, false);
  apply_controlled_powers(rows, s, flagged.evolution_time, flagged.clock_qubits, -1.0);
  // Hadamards on the clock followed by projection onto |0...0>.
  const VectorXc branch = rows.colwise().sum().transpose() / std::sqrt(static_cast<double>(n));
  const double p = branch.squaredNorm();
  require(p > 1e-300, ErrorKind::kDegenerate, "postselected branch is empty");
  return {StateVector(branch / std::sqrt(p), TensorLayout{m}), p, {},
          flagged.evolution_time};
}

HHLResult hhl_solve(const ComplexMatrix& a_hat, const StateVector& b, double sigma_thresh,
                    const QPEConfig& cfg, double c_const) {
  require(sigma_thresh > 0.0, ErrorKind::kParameter, "sigma_thresh must be positive");
  require(cfg.backend == EvolutionBackend::kExact, ErrorKind::kConfig,
          "hhl_solve runs the exact backend; use hhl_solve_emulated for glmr");
  const Spectrum s = spectrum_of(a_hat);
  auto kept = retained(s.values, sigma_thresh);
  require(!kept.empty(), ErrorKind::kDegenerate,
          "every eigenvalue is below sigma_thresh " + std::to_string(sigma_thresh));
  const auto entangled = phase_estimation(a_hat, b, cfg);
  const double c = c_const > 0.0 ? c_const : sigma_thresh;
  auto result =
      uncompute_and_postselect(conditional_rotation_invert(entangled, c, sigma_thresh), a_hat);
  result.retained_eigenvalues = std::move(kept);
  return result;
}

HHLResult quantum_multiply(const DensityMatrix& k, const StateVector& y, const QPEConfig& cfg) {
  require(k.dimension() == y.dimension(), ErrorKind::kLayout, "kernel and label dimensions differ");
  const VectorXc direct = k.data() * y.amplitudes();
  require(direct.norm() > 1e-12, ErrorKind::kDegenerate, "K y vanishes");
  const auto entangled = phase_estimation(k.matrix(), y, cfg);
  const auto weights = branch_weights(entangled);
  double top = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c)
    if (weights[c] > kNegligibleWeight) top = std::max(top, entangled.decoded_eigenvalue(c));
  const double scale = top > 1.0 ? 1.0 / top : 1.0;
  auto result =
      uncompute_and_postselect(conditional_rotation_multiply(entangled, scale), k.matrix());
  const Spectrum s = spectrum_of(k.matrix());
  result.retained_eigenvalues = retained(s.values, 1e-12 * std::max(1.0, s.values.maxCoeff()));
  return result;
}

EmulatedHHLResult hhl_solve_emulated(const ProgramState& program, double generator_scale,
                                     const StateVector& b, double sigma_thresh,
                                     const QPEConfig& cfg, double error_budget) {
  cfg.validate();
  require(generator_scale > 0.0, ErrorKind::kParameter, "generator scale must be positive");
  require(sigma_thresh > 0.0, ErrorKind::kParameter, "sigma_thresh must be positive");
  require(error_budget > 0.0, ErrorKind::kParameter, "error budget must be positive");
  const std::size_t m = program.system_dimension();
  require(b.dimension() == m, ErrorKind::kLayout, "program state and vector dimensions differ");
  const std::size_t n = cfg.clock_size();
  require(n * m <= 64, ErrorKind::kSize, "emulated HHL is limited to 64 clock-system dimensions");

  const ComplexMatrix a_hat = generator_scale * program.generator();
  const Spectrum s = spectrum_of(a_hat);
  require(!retained(s.values, sigma_thresh).empty(), ErrorKind::kDegenerate,
          "every eigenvalue is below sigma_thresh");
  const double t0 = resolve_time(s, cfg);
  // exp(+i A tau) = exp(-i B (-generator_scale tau)), run as ceil(t^2 / delta)
  // glmr steps of B-time t.
  std::size_t total_steps = 0;
  auto step_count = [&](double b_time) {
    const auto steps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(b_time * b_time / error_budget)));
    total_steps += steps;
    return steps;
  };

  using Blocks = std::vector<std::vector<MatrixXc>>;
  const Index mi = static_cast<Index>(m);
  const MatrixXc bb = b.amplitudes() * b.amplitudes().adjoint();
  Blocks rho(n, std::vector<MatrixXc>(n, bb / static_cast<double>(n)));

  auto left_power = [&](MatrixXc x, double b_time) {
    const auto steps = step_count(b_time);
    const double dt = b_time / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) x = glmr_left_step(program, x, dt);
    return x;
  };
  auto both_power = [&](MatrixXc x, double b_time) {
    const auto steps = step_count(b_time);
    const double dt = b_time / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) x = glmr_channel_step(program, x, dt);
    return x;
  };
  // Controlled exp(i A t0 2^q direction) on every clock bit.
  auto controlled = [&](Blocks& r, double direction) {
    for (std::size_t q = 0; q < cfg.clock_qubits; ++q) {
      const double b_time =
          -direction * generator_scale * t0 * static_cast<double>(std::size_t{1} << q);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t kp = 0; kp < n; ++kp) {
          const bool on_left = (k >> q) & 1U;
          const bool on_right = (kp >> q) & 1U;
          if (on_left && on_right)
            r[k][kp] = both_power(r[k][kp], b_time);
          else if (on_left)
            r[k][kp] = left_power(r[k][kp], b_time);
          else if (on_right)
            r[k][kp] = left_power(r[k][kp].adjoint(), b_time).adjoint();
        }
    }
  };
  auto fourier = [&](Blocks& r, bool inverse) {
    const double sign = inverse ? -1.0 : 1.0;
    MatrixXc f(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        f(static_cast<Index>(j), static_cast<Index>(k)) =
            std::exp(Complex(0.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                      static_cast<double>(n))) /
            std::sqrt(static_cast<double>(n));
    Blocks out(n, std::vector<MatrixXc>(n, MatrixXc::Zero(mi, mi)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t jp = 0; jp < n; ++jp)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t kp = 0; kp < n; ++kp)
            out[j][jp] += f(static_cast<Index>(j), static_cast<Index>(k)) *
                          std::conj(f(static_cast<Index>(jp), static_cast<Index>(kp))) * r[k][kp];
    r = std::move(out);
  };

  controlled(rho, 1.0);
  fourier(rho, true);
  const double c = sigma_thresh;
  std::vector<double> amp(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = decoded(k, n, t0);
    if (lambda >= sigma_thresh && lambda > 0.0) amp[k] = std::min(1.0, c / lambda);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t kp = 0; kp < n; ++kp) rho[k][kp] *= amp[k] * amp[kp];
  fourier(rho, false);
  controlled(rho, -1.0);
  MatrixXc out = MatrixXc::Zero(mi, mi);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t kp = 0; kp < n; ++kp) out += rho[k][kp];
  out /= static_cast<double>(n);
  const double p = out.trace().real();
  require(p > 1e-300, ErrorKind::kDegenerate, "postselected branch is empty");
  const auto eig = hermitian_eig(ComplexMatrix(symmetrized(out / p)));
  return {StateVector(fix_global_phase(eig.eigenvectors.data().col(0)), TensorLayout{m}), p,
          total_steps};
}

}  // namespace qssvm
