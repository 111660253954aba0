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

#include "qssvm/density_encoding.hpp"

#include <cmath>
#include <string>

#include "qssvm/error.hpp"

namespace qssvm {

StateVector::StateVector(VectorXc amplitudes, TensorLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  require(static_cast<std::size_t>(amplitudes_.size()) == layout_.dimension(), ErrorKind::kLayout,
          "state dimension does not match its layout");
  require(amplitudes_.allFinite(), ErrorKind::kEncoding, "state has non-finite amplitudes");
  const double norm = amplitudes_.norm();
  require(std::abs(norm - 1.0) <= kNormTolerance, ErrorKind::kEncoding,
          "state is not unit norm (|psi| = " + std::to_string(norm) + ")");
}

StateVector StateVector::normalized(VectorXc amplitudes, TensorLayout layout) {
  const double norm = amplitudes.norm();
  require(norm > 0.0 && std::isfinite(norm), ErrorKind::kEncoding, "cannot normalize a zero vector");
  return StateVector(amplitudes / norm, std::move(layout));
}

StateVector StateVector::from_real(const Eigen::VectorXd& v) {
  return normalized(v.cast<Complex>(), TensorLayout{static_cast<std::size_t>(v.size())});
}

ComplexMatrix StateVector::projector() const {
  return ComplexMatrix(amplitudes_ * amplitudes_.adjoint());
}

double fidelity(const StateVector& a, const StateVector& b) {
  require(a.dimension() == b.dimension(), ErrorKind::kLayout, "fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, TensorLayout layout, Tolerance tol)
    : matrix_(ComplexMatrix::identity(1)), layout_(std::move(layout)) {
  require(m.is_square() && m.rows() == layout_.dimension(), ErrorKind::kLayout,
          "density dimension does not match its layout");
  const double dev = max_hermitian_deviation(m.data());
  require(dev <= tol.hermitian, ErrorKind::kSymmetry,
          "density is not Hermitian (deviation " + std::to_string(dev) + ")");
  MatrixXc h = (m.data() + m.data().adjoint()) * 0.5;
  const double tr = h.trace().real();
  require(std::abs(tr - 1.0) <= tol.trace, ErrorKind::kEncoding,
          "density trace is " + std::to_string(tr) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  require(min_eig >= -tol.min_eigenvalue, ErrorKind::kEncoding,
          "density is not positive semidefinite (min eigenvalue " + std::to_string(min_eig) + ")");
  matrix_ = ComplexMatrix(std::move(h));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.projector(), psi.layout());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim),
                       TensorLayout{dim});
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  require(rho.dimension() == psi.dimension(), ErrorKind::kLayout, "fidelity: dimension mismatch");
  return psi.amplitudes().dot(rho.data() * psi.amplitudes()).real();
}

StateVector data_state(const TrainingSet& x) {
  const auto& f = x.features();
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    require(f.row(i).norm() > 0.0, ErrorKind::kEncoding,
            "sample " + std::to_string(i) + " has zero norm");
  // Block i holds |x_i| |x_i> = x_i, so the flattened row-major matrix is the state.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = f;
  const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(rows.data(), rows.size());
  return StateVector::normalized(flat.cast<Complex>(), TensorLayout{x.size(), x.dimension()});
}

DensityMatrix kernel_density(const TrainingSet& x) {
  const auto psi = data_state(x);
  return DensityMatrix(partial_trace(psi.projector(), psi.layout(), 1), TensorLayout{x.size()});
}

StateVector label_state(const Eigen::VectorXd& y) {
  require(y.size() >= 1 && y.norm() > 0.0, ErrorKind::kEncoding, "label vector is all zero");
  return StateVector::from_real(y);
}

StateVector incidence_state(const SampleGraph& g) {
  const Eigen::MatrixXd gi = incidence_matrix(g);  // rows are unit vectors
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = gi;
  const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(rows.data(), rows.size()) /
                               std::sqrt(static_cast<double>(g.vertex_count()));
  return StateVector(flat.cast<Complex>(), TensorLayout{g.vertex_count(), g.edge_count()});
}

DensityMatrix laplacian_density(const SampleGraph& g) {
  const auto psi = incidence_state(g);
  return DensityMatrix(partial_trace(psi.projector(), psi.layout(), 1),
                       TensorLayout{g.vertex_count()});
}

}  // namespace qssvm
