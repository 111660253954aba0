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

#include <Eigen/Dense>

#include "qssvm/dataset_graph.hpp"
#include "qssvm/tensor_linalg.hpp"

namespace qssvm {

/// Unit-norm pure state over a composite register.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  StateVector(VectorXc amplitudes, TensorLayout layout);

  /// Rescales to unit norm; a zero vector is an encoding error.
  static StateVector normalized(VectorXc amplitudes, TensorLayout layout);
  static StateVector from_real(const Eigen::VectorXd& v);

  const VectorXc& amplitudes() const { return amplitudes_; }
  const TensorLayout& layout() const { return layout_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

  /// |psi><psi|
  ComplexMatrix projector() const;

 private:
  VectorXc amplitudes_;
  TensorLayout layout_;
};

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

struct DensityTolerance {
  double hermitian = 1e-10;
  double min_eigenvalue = 1e-10;
  double trace = 1e-10;
};

/// Hermitian, positive semidefinite, unit-trace operator. The stored matrix is
/// the exact Hermitian part of the input.
class DensityMatrix {
 public:
  using Tolerance = DensityTolerance;

  /// Tolerances used for outputs of long channel compositions.
  static constexpr Tolerance kChannelTolerance{1e-10, 1e-8, 1e-9};

  DensityMatrix(const ComplexMatrix& m, TensorLayout layout, Tolerance tol = {});
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(m, TensorLayout{m.rows()}) {}

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  const MatrixXc& data() const { return matrix_.data(); }
  const TensorLayout& layout() const { return layout_; }
  std::size_t dimension() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  TensorLayout layout_;
};

/// <psi| rho |psi>
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// |X> = sum_i |i> (x) x_i / sqrt(sum_i |x_i|^2) over the layout {m, p}.
StateVector data_state(const TrainingSet& x);

/// Tr_2 |X><X| = X X^T / Tr(X X^T).
DensityMatrix kernel_density(const TrainingSet& x);

/// y / |y|.
StateVector label_state(const Eigen::VectorXd& y);

/// |G_I> = m^{-1/2} sum_i |i> (x) |v_i> over the layout {m, n} where |v_i> is
/// row i of the incidence matrix.
StateVector incidence_state(const SampleGraph& g);

/// Tr_2 |G_I><G_I| = normalized Laplacian / m.
DensityMatrix laplacian_density(const SampleGraph& g);

}  // namespace qssvm
