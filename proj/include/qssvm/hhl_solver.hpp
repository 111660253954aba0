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

#include <cstddef>
#include <vector>

#include "qssvm/density_encoding.hpp"
#include "qssvm/lmr_channels.hpp"
#include "qssvm/tensor_linalg.hpp"

namespace qssvm {

enum class EvolutionBackend { kExact, kGlmr };

struct QPEConfig {
  std::size_t clock_qubits = 8;
  /// t0 in U = exp(i A t0). Zero or negative picks pi / lambda_max, which puts
  /// the largest eigenvalue at phase 1/2.
  double evolution_time = 0.0;
  EvolutionBackend backend = EvolutionBackend::kExact;

  void validate() const;
  std::size_t clock_size() const { return std::size_t{1} << clock_qubits; }
};

/// Clock (x) system amplitudes after phase estimation, layout {2^c, m}. The
/// clock integer k reads as the phase k / 2^c.
struct EntangledState {
  StateVector state;
  double evolution_time;
  std::size_t clock_qubits;

  std::size_t clock_size() const { return std::size_t{1} << clock_qubits; }
  std::size_t system_dimension() const { return state.dimension() / clock_size(); }
  /// 2 pi k / (2^c t0)
  double decoded_eigenvalue(std::size_t k) const;
};

/// EntangledState with a flag qubit in front: layout {2, 2^c, m}; flag 0 is the
/// success branch.
struct FlaggedState {
  StateVector state;
  double evolution_time;
  std::size_t clock_qubits;

  std::size_t clock_size() const { return std::size_t{1} << clock_qubits; }
  std::size_t system_dimension() const { return state.dimension() / (2 * clock_size()); }
};

/// Resolves cfg.evolution_time against the spectrum of `a_hat`.
double resolve_evolution_time(const ComplexMatrix& a_hat, const QPEConfig& cfg);

/// Hadamards on the clock, controlled exp(i A t0 2^q) from clock bit q, inverse
/// QFT on the clock. Only the exact backend is accepted.
EntangledState phase_estimation(const ComplexMatrix& a_hat, const StateVector& b,
                                const QPEConfig& cfg);

/// Flag amplitude c / lambda on branches whose decoded eigenvalue is at least
/// `sigma_thresh`; other branches go entirely to the failure flag.
FlaggedState conditional_rotation_invert(const EntangledState& entangled, double c_const,
                                         double sigma_thresh);

/// Flag amplitude scale * lambda on every branch.
FlaggedState conditional_rotation_multiply(const EntangledState& entangled, double scale = 1.0);

struct HHLResult {
  StateVector solution_state;
  double success_probability;
  /// Eigenvalues of the input at or above the filter threshold, descending.
  std::vector<double> retained_eigenvalues;
  double evolution_time;
};

/// Undoes phase estimation on the success branch and projects the clock onto
/// |0>. `success_probability` is the squared norm of that branch.
HHLResult uncompute_and_postselect(const FlaggedState& flagged, const ComplexMatrix& a_hat);

/// Normalized filtered inverse of `a_hat` applied to `b`. `c_const` <= 0 uses
/// sigma_thresh.
HHLResult hhl_solve(const ComplexMatrix& a_hat, const StateVector& b, double sigma_thresh,
                    const QPEConfig& cfg, double c_const = 0.0);

/// Normalized K y via phase estimation and the multiplying rotation.
HHLResult quantum_multiply(const DensityMatrix& k, const StateVector& y, const QPEConfig& cfg);

struct EmulatedHHLResult {
  StateVector solution_state;
  double success_probability;
  /// glmr steps summed over every controlled block.
  std::size_t total_steps;
};

/// Density-matrix emulation of hhl_solve where every controlled exp(i A tau) is
/// driven by the program state through glmr steps instead of an exact unitary.
/// A_hat = generator_scale * B where B is the program state's generator.
/// Meant for tiny systems: the cost grows with 4^c m^4 per step.
EmulatedHHLResult hhl_solve_emulated(const ProgramState& program, double generator_scale,
                                     const StateVector& b, double sigma_thresh,
                                     const QPEConfig& cfg, double error_budget);

}  // namespace qssvm
