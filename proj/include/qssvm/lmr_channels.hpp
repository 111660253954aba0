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

#pragma once

#include <cstdint>
#include <vector>

#include "qssvm/density_encoding.hpp"
#include "qssvm/tensor_linalg.hpp"

namespace qssvm {

/// Block-diagonal program state |0><0| (x) rho'' + |1><1| (x) rho''' over the
/// layout {2, m}. The simulated generator is B = rho'' - rho'''.
class ProgramState {
 public:
  static constexpr double kOffDiagonalTolerance = 1e-12;

  /// `scale` relates B to the operator the caller actually wants to simulate:
  /// intended = scale * B.
  ProgramState(DensityMatrix rho_prime, double scale = 1.0);

  static ProgramState from_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                                  double scale = 1.0);

  const DensityMatrix& rho_prime() const { return rho_prime_; }
  double scale() const { return scale_; }
  std::size_t system_dimension() const { return rho_prime_.dimension() / 2; }

  ComplexMatrix upper() const;  // rho''
  ComplexMatrix lower() const;  // rho'''
  ComplexMatrix generator() const;

 private:
  DensityMatrix rho_prime_;
  double scale_;
};

struct EvolutionConfig {
  double total_time = 1.0;
  double error_budget = 1e-3;
  /// Zero means ceil(t^2 / delta).
  std::size_t steps = 0;

  std::size_t resolved_steps() const;
};

/// S = sum_ij |i><j| (x) |j><i| on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d);

/// P |j1, j2, j3> = |j3, j1, j2> on three copies of C^d.
ComplexMatrix cyclic_permutation(std::size_t d);

/// exp(-i S dt) = cos(dt) I - i sin(dt) S, using S^2 = I.
ComplexMatrix partial_swap_evolution(double dt, std::size_t d);

/// |0><0| (x) exp(-i S dt) + |1><1| (x) exp(+i S dt) over {control, a, b}.
ComplexMatrix controlled_partial_swap_evolution(double dt, std::size_t d);

/// Tr_1 { exp(-i S dt) (k (x) sigma) exp(i S dt) }.
DensityMatrix lmr_step(const DensityMatrix& k, const DensityMatrix& sigma, double dt);

/// Runs the program-state circuit over registers holding the given densities:
/// |+><+| (x) A_1 (x) ... (x) A_n, controlled cyclic shift of the n registers,
/// discard registers n..2, Hadamard on the control, dephase the control.
/// The result has rho'' - rho''' = (A_1 ... A_n + A_n ... A_1) / 2.
ProgramState run_program_state_circuit(const std::vector<DensityMatrix>& registers,
                                       double scale = 1.0);

/// Program state with rho'' - rho''' = (K L K + K L K^dagger)/2 from the
/// circuit on K, L, K.
ProgramState make_program_state_klk(const DensityMatrix& k, const DensityMatrix& l,
                                    double scale = 1.0);

/// Two-register circuit whose cyclic shift is the swap: rho'' - rho''' = K K.
ProgramState make_program_state_kk(const DensityMatrix& k, double scale = 1.0);

/// Plain LMR embedding: rho'' = K, rho''' = 0.
ProgramState make_program_state_k(const DensityMatrix& k, double scale = 1.0);

/// Tr_control Tr_a { exp(-i S' dt) (rho' (x) sigma) exp(i S' dt) } with the
/// register order (control, a, b).
DensityMatrix glmr_step(const ProgramState& ps, const DensityMatrix& sigma, double dt);

/// The same channel extended linearly to an arbitrary square operator X.
MatrixXc glmr_channel_step(const ProgramState& ps, const MatrixXc& x, double dt);

/// One-sided action Tr_control Tr_a { exp(-i S' dt) (rho' (x) X) } on an
/// arbitrary operator X. Approximates exp(-i B dt) X; used when the program
/// state drives a controlled evolution.
MatrixXc glmr_left_step(const ProgramState& ps, const MatrixXc& x, double dt);

struct WeightedSource {
  ProgramState state;
  double weight;
};

/// Mixture of program states. Each source enters with effective weight
/// w_i * scale_i; the result has scale W = sum_i w_i scale_i, so that
/// W * (rho'' - rho''') = sum_i w_i scale_i B_i. With unit source scales this is
/// sum_i w_i rho'_i / sum_i w_i.
ProgramState mix_program_states(const std::vector<WeightedSource>& sources);

struct EvolutionResult {
  DensityMatrix state;
  /// W from mix_program_states; the simulated generator is the mixture's B.
  double generator_scale;
  std::size_t steps;
};

/// n glmr steps of size t/n with the deterministic source mixture.
EvolutionResult simulate_evolution(const std::vector<WeightedSource>& sources,
                                   const DensityMatrix& sigma0, const EvolutionConfig& cfg);

/// Same trajectory, but every step draws one source with probability w_i / W.
EvolutionResult simulate_evolution_sampled(const std::vector<WeightedSource>& sources,
                                           const DensityMatrix& sigma0,
                                           const EvolutionConfig& cfg, std::uint64_t seed);

/// exp(-i h t) sigma exp(i h t).
DensityMatrix exact_evolution(const ComplexMatrix& h, const DensityMatrix& sigma, double t);

}  // namespace qssvm
