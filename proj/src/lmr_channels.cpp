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

#include "qssvm/lmr_channels.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qssvm/error.hpp"

namespace qssvm {
namespace {

using Index = Eigen::Index;

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    out *= base;
    require(out <= kDefaultMaxDimension, ErrorKind::kSize,
            "register product exceeds dimension cap " + std::to_string(kDefaultMaxDimension));
  }
  return out;
}

MatrixXc kron_raw(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Index of |j><i| partner under the swap of two d-dimensional factors.
inline Index swapped(Index idx, Index d) { return (idx % d) * d + idx / d; }

// exp(-i S dt) Y exp(i S dt) for Y on C^d (x) C^d, using S Y = row swap and
// Y S = column swap.
MatrixXc conjugate_by_partial_swap(const MatrixXc& y, Index d, double dt) {
  const double c = std::cos(dt);
  const double s = std::sin(dt);
  const Complex ics(0.0, c * s);
  const Index n = y.rows();
  MatrixXc out(n, n);
  for (Index r = 0; r < n; ++r) {
    const Index rs = swapped(r, d);
    for (Index col = 0; col < n; ++col) {
      const Index cs = swapped(col, d);
      out(r, col) = c * c * y(r, col) + s * s * y(rs, cs) - ics * y(rs, col) + ics * y(r, cs);
    }
  }
  return out;
}

// exp(-i S dt) Y without the right factor.
MatrixXc left_multiply_partial_swap(const MatrixXc& y, Index d, double dt) {
  const double c = std::cos(dt);
  const Complex is(0.0, std::sin(dt));
  const Index n = y.rows();
  MatrixXc out(n, n);
  for (Index r = 0; r < n; ++r) out.row(r) = c * y.row(r) - is * y.row(swapped(r, d));
  return out;
}

MatrixXc trace_out_first(const MatrixXc& z, std::size_t d) {
  return partial_trace(ComplexMatrix(z), TensorLayout{d, d}, 0).data();
}

// Tr_{2..n} [ L (A_1 (x) ... (x) A_n) R^dagger ] where L and R are either the
// identity or the cyclic shift |j_1..j_n> -> |j_n j_1..j_{n-1}>. The n-register
// operator is never materialized: entries are products of factor entries and
// the shift only relabels indices.
MatrixXc reduced_register_block(const std::vector<const MatrixXc*>& regs, bool shift_left,
                                bool shift_right) {
  const std::size_t n = regs.size();
  const Index m = regs.front()->rows();
  const std::size_t rest_count = checked_power(static_cast<std::size_t>(m), n - 1);
  std::vector<Index> rest(n, 0);
  std::vector<Index> u(n), w(n);
  MatrixXc out = MatrixXc::Zero(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index ap = 0; ap < m; ++ap) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < rest_count; ++t) {
        std::size_t code = t;
        for (std::size_t f = n - 1; f >= 1; --f) {
          rest[f] = static_cast<Index>(code % static_cast<std::size_t>(m));
          code /= static_cast<std::size_t>(m);
        }
        // Row tuple (a, rest...), column tuple (ap, rest...). The shift's
        // preimage of (i_1, i_2, ..., i_n) is (i_2, ..., i_n, i_1).
        for (std::size_t f = 0; f < n; ++f) {
          const Index row_digit = f == 0 ? a : rest[f];
          const Index col_digit = f == 0 ? ap : rest[f];
          const std::size_t src = (f + 1) % n;
          u[f] = shift_left ? (src == 0 ? a : rest[src]) : row_digit;
          w[f] = shift_right ? (src == 0 ? ap : rest[src]) : col_digit;
        }
        Complex prod = 1.0;
        for (std::size_t f = 0; f < n && prod != 0.0; ++f) prod *= (*regs[f])(u[f], w[f]);
        acc += prod;
      }
      out(a, ap) = acc;
    }
  return out;
}

void require_same_dimension(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  require(a.dimension() == b.dimension(), ErrorKind::kLayout,
          std::string(what) + ": dimension mismatch (" + std::to_string(a.dimension()) + " vs " +
              std::to_string(b.dimension()) + ")");
}

}  // namespace

ProgramState::ProgramState(DensityMatrix rho_prime, double scale)
    : rho_prime_(std::move(rho_prime)), scale_(scale) {
  require(scale > 0.0 && std::isfinite(scale), ErrorKind::kParameter,
          "program state scale must be positive");
  const auto& dims = rho_prime_.layout().factor_dims();
  require(dims.size() == 2 && dims[0] == 2, ErrorKind::kLayout,
          "program state must live on {control(2), system}");
  const Index m = static_cast<Index>(dims[1]);
  const auto& d = rho_prime_.data();
  const double off = std::max(d.block(0, m, m, m).cwiseAbs().maxCoeff(),
                              d.block(m, 0, m, m).cwiseAbs().maxCoeff());
  require(off <= kOffDiagonalTolerance, ErrorKind::kLayout,
          "program state has coherences between control blocks");
}

ProgramState ProgramState::from_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                                       double scale) {
  require(upper.is_square() && lower.rows() == upper.rows() && lower.cols() == upper.cols(),
          ErrorKind::kLayout, "program state blocks must be square and equal in size");
  const Index m = static_cast<Index>(upper.rows());
  MatrixXc full = MatrixXc::Zero(2 * m, 2 * m);
  full.topLeftCorner(m, m) = upper.data();
  full.bottomRightCorner(m, m) = lower.data();
  return ProgramState(
      DensityMatrix(ComplexMatrix(std::move(full)), TensorLayout{2, upper.rows()},
                    DensityMatrix::kChannelTolerance),
      scale);
}

ComplexMatrix ProgramState::upper() const {
  const Index m = static_cast<Index>(system_dimension());
  return ComplexMatrix(rho_prime_.data().topLeftCorner(m, m));
}

ComplexMatrix ProgramState::lower() const {
  const Index m = static_cast<Index>(system_dimension());
  return ComplexMatrix(rho_prime_.data().bottomRightCorner(m, m));
}

ComplexMatrix ProgramState::generator() const { return upper() - lower(); }

std::size_t EvolutionConfig::resolved_steps() const {
  require(std::isfinite(total_time), ErrorKind::kParameter, "evolution time must be finite");
  if (steps > 0) return steps;
  require(error_budget > 0.0, ErrorKind::kParameter, "error budget must be positive");
  const double n = std::ceil(total_time * total_time / error_budget);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

ComplexMatrix swap_operator(std::size_t d) {
  require(d >= 1, ErrorKind::kParameter, "swap dimension must be >= 1");
  const auto n = static_cast<Index>(d * d);
  MatrixXc s = MatrixXc::Zero(n, n);
  for (Index i = 0; i < n; ++i) s(swapped(i, static_cast<Index>(d)), i) = 1.0;
  return ComplexMatrix(std::move(s));
}

ComplexMatrix cyclic_permutation(std::size_t d) {
  require(d >= 1, ErrorKind::kParameter, "permutation dimension must be >= 1");
  const std::size_t n = checked_power(d, 3);
  MatrixXc p = MatrixXc::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t j1 = 0; j1 < d; ++j1)
    for (std::size_t j2 = 0; j2 < d; ++j2)
      for (std::size_t j3 = 0; j3 < d; ++j3) {
        const auto from = (j1 * d + j2) * d + j3;
        const auto to = (j3 * d + j1) * d + j2;
        p(static_cast<Index>(to), static_cast<Index>(from)) = 1.0;
      }
  return ComplexMatrix(std::move(p));
}

ComplexMatrix partial_swap_evolution(double dt, std::size_t d) {
  const auto s = swap_operator(d);
  const auto n = static_cast<Index>(d * d);
  return ComplexMatrix(std::cos(dt) * MatrixXc::Identity(n, n) -
                       Complex(0.0, std::sin(dt)) * s.data());
}

ComplexMatrix controlled_partial_swap_evolution(double dt, std::size_t d) {
  const auto n = static_cast<Index>(d * d);
  MatrixXc u = MatrixXc::Zero(2 * n, 2 * n);
  u.topLeftCorner(n, n) = partial_swap_evolution(dt, d).data();
  u.bottomRightCorner(n, n) = partial_swap_evolution(-dt, d).data();
  return ComplexMatrix(std::move(u));
}

DensityMatrix lmr_step(const DensityMatrix& k, const DensityMatrix& sigma, double dt) {
  require_same_dimension(k, sigma, "lmr_step");
  const auto d = static_cast<Index>(sigma.dimension());
  const MatrixXc z = conjugate_by_partial_swap(kron_raw(k.data(), sigma.data()), d, dt);
  return DensityMatrix(ComplexMatrix(trace_out_first(z, sigma.dimension())), sigma.layout(),
                       DensityMatrix::kChannelTolerance);
}

ProgramState run_program_state_circuit(const std::vector<DensityMatrix>& registers,
                                       double scale) {
  require(!registers.empty(), ErrorKind::kParameter, "program state circuit needs registers");
  std::vector<const MatrixXc*> regs;
  for (const auto& r : registers) {
    require_same_dimension(r, registers.front(), "program state circuit");
    regs.push_back(&r.data());
  }

  // Steps I and II: controlled shift on |+><+| (x) A_1 (x) ... (x) A_n, then
  // discard registers n..2. Control block (a, b) carries
  // 1/2 Tr_{2..n}[P^a X P^{dagger b}].
  MatrixXc block[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) block[a][b] = 0.5 * reduced_register_block(regs, a == 1, b == 1);

  // Step III: Hadamard on the control; block (i, j) <- 1/2 sum (-1)^(ia + jb) block(a, b).
  // Step IV: computational-basis dephasing keeps the diagonal blocks.
  const Index m = regs.front()->rows();
  MatrixXc upper = MatrixXc::Zero(m, m);
  MatrixXc lower = MatrixXc::Zero(m, m);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      upper += 0.5 * block[a][b];
      lower += ((a + b) % 2 == 0 ? 0.5 : -0.5) * block[a][b];
    }
  return ProgramState::from_blocks(ComplexMatrix(std::move(upper)), ComplexMatrix(std::move(lower)),
                                   scale);
}

ProgramState make_program_state_klk(const DensityMatrix& k, const DensityMatrix& l, double scale) {
  require_same_dimension(k, l, "make_program_state_klk");
  return run_program_state_circuit({k, l, k}, scale);
}

ProgramState make_program_state_kk(const DensityMatrix& k, double scale) {
  return run_program_state_circuit({k, k}, scale);
}

ProgramState make_program_state_k(const DensityMatrix& k, double scale) {
  return ProgramState::from_blocks(k.matrix(), ComplexMatrix::zeros(k.dimension(), k.dimension()),
                                   scale);
}

MatrixXc glmr_channel_step(const ProgramState& ps, const MatrixXc& x, double dt) {
  require(ps.system_dimension() == static_cast<std::size_t>(x.rows()) && x.rows() == x.cols(),
          ErrorKind::kLayout, "glmr step: program state and target dimensions differ");
  const Index d = x.rows();
  // rho' is block diagonal in the control, so exp(-i S' dt) acts as
  // exp(-/+ i S dt) on the two blocks and Tr_control sums them.
  const MatrixXc forward = conjugate_by_partial_swap(kron_raw(ps.upper().data(), x), d, dt);
  const MatrixXc backward = conjugate_by_partial_swap(kron_raw(ps.lower().data(), x), d, -dt);
  return trace_out_first(forward + backward, static_cast<std::size_t>(d));
}

DensityMatrix glmr_step(const ProgramState& ps, const DensityMatrix& sigma, double dt) {
  return DensityMatrix(ComplexMatrix(glmr_channel_step(ps, sigma.data(), dt)), sigma.layout(),
                       DensityMatrix::kChannelTolerance);
}

MatrixXc glmr_left_step(const ProgramState& ps, const MatrixXc& x, double dt) {
  require(ps.system_dimension() == static_cast<std::size_t>(x.rows()) && x.rows() == x.cols(),
          ErrorKind::kLayout, "glmr_left_step: dimension mismatch");
  const Index d = x.rows();
  const MatrixXc forward = left_multiply_partial_swap(kron_raw(ps.upper().data(), x), d, dt);
  const MatrixXc backward = left_multiply_partial_swap(kron_raw(ps.lower().data(), x), d, -dt);
  return trace_out_first(forward + backward, static_cast<std::size_t>(d));
}

ProgramState mix_program_states(const std::vector<WeightedSource>& sources) {
  require(!sources.empty(), ErrorKind::kParameter, "no program-state sources");
  const std::size_t m = sources.front().state.system_dimension();
  double total = 0.0;
  MatrixXc mix = MatrixXc::Zero(static_cast<Index>(2 * m), static_cast<Index>(2 * m));
  for (const auto& src : sources) {
    require(src.weight > 0.0 && std::isfinite(src.weight), ErrorKind::kParameter,
            "source weights must be positive");
    require(src.state.system_dimension() == m, ErrorKind::kLayout,
            "program-state sources differ in dimension");
    const double w = src.weight * src.state.scale();
    mix += w * src.state.rho_prime().data();
    total += w;
  }
  mix /= total;
  return ProgramState(DensityMatrix(ComplexMatrix(std::move(mix)), TensorLayout{2, m},
                                    DensityMatrix::kChannelTolerance),
                      total);
}

EvolutionResult simulate_evolution(const std::vector<WeightedSource>& sources,
                                   const DensityMatrix& sigma0, const EvolutionConfig& cfg) {
  const auto joint = mix_program_states(sources);
  if (cfg.total_time == 0.0) return {sigma0, joint.scale(), 0};
  const std::size_t n = cfg.resolved_steps();
  const double dt = cfg.total_time / static_cast<double>(n);
  DensityMatrix state = sigma0;
  for (std::size_t i = 0; i < n; ++i) state = glmr_step(joint, state, dt);
  return {std::move(state), joint.scale(), n};
}

EvolutionResult simulate_evolution_sampled(const std::vector<WeightedSource>& sources,
                                           const DensityMatrix& sigma0,
                                           const EvolutionConfig& cfg, std::uint64_t seed) {
  const auto joint = mix_program_states(sources);
  if (cfg.total_time == 0.0) return {sigma0, joint.scale(), 0};
  std::vector<double> weights;
  for (const auto& s : sources) weights.push_back(s.weight * s.state.scale());
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  const std::size_t n = cfg.resolved_steps();
  const double dt = cfg.total_time / static_cast<double>(n);
  DensityMatrix state = sigma0;
  for (std::size_t i = 0; i < n; ++i) state = glmr_step(sources[pick(rng)].state, state, dt);
  return {std::move(state), joint.scale(), n};
}

DensityMatrix exact_evolution(const ComplexMatrix& h, const DensityMatrix& sigma, double t) {
  const auto u = hermitian_exp(h, t);
  return DensityMatrix(u * sigma.matrix() * u.adjoint(), sigma.layout(),
                       DensityMatrix::kChannelTolerance);
}

}  // namespace qssvm
