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

#include "qssvm/tensor_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "qssvm/error.hpp"

namespace qssvm {

ComplexMatrix::ComplexMatrix(MatrixXc data) : data_(std::move(data)) {
  require(data_.rows() >= 1 && data_.cols() >= 1, ErrorKind::kSize,
          "matrix must have at least one row and one column");
  require(data_.allFinite(), ErrorKind::kParameter, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix(MatrixXc::Identity(k, k));
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(
      MatrixXc::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

ComplexMatrix ComplexMatrix::from_real(const Eigen::MatrixXd& real) {
  return ComplexMatrix(real.cast<Complex>());
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kLayout,
          "matrix sum: dimension mismatch");
  return ComplexMatrix(a.data_ + b.data_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kLayout,
          "matrix difference: dimension mismatch");
  return ComplexMatrix(a.data_ - b.data_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows(), ErrorKind::kLayout, "matrix product: inner dimension mismatch");
  return ComplexMatrix(a.data_ * b.data_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  return ComplexMatrix(s * a.data_);
}

TensorLayout::TensorLayout(std::initializer_list<std::size_t> dims)
    : TensorLayout(std::vector<std::size_t>(dims)) {}

TensorLayout::TensorLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  require(!dims_.empty(), ErrorKind::kLayout, "layout needs at least one factor");
  for (auto d : dims_) require(d >= 1, ErrorKind::kLayout, "layout factor of dimension zero");
}

std::size_t TensorLayout::dimension() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

TensorLayout TensorLayout::without(std::size_t factor) const {
  require(factor < dims_.size(), ErrorKind::kLayout, "factor index out of range");
  require(dims_.size() > 1, ErrorKind::kLayout, "cannot remove the only factor");
  auto dims = dims_;
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(factor));
  return TensorLayout(std::move(dims));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const auto& v = eigenvectors.data();
  return ComplexMatrix(v * eigenvalues.cast<Complex>().asDiagonal() * v.adjoint());
}

double max_hermitian_deviation(const MatrixXc& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

MatrixXc symmetrized(const MatrixXc& m) {
  require(m.rows() == m.cols(), ErrorKind::kSymmetry, "matrix is not square");
  const double dev = max_hermitian_deviation(m);
  require(dev <= kHermitianTolerance, ErrorKind::kSymmetry,
          "matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
  return (m + m.adjoint()) * 0.5;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dimension) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  require(rows <= max_dimension && cols <= max_dimension, ErrorKind::kSize,
          "kron result " + std::to_string(rows) + "x" + std::to_string(cols) +
              " exceeds dimension cap " + std::to_string(max_dimension));
  const auto& A = a.data();
  const auto& B = b.data();
  MatrixXc out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return ComplexMatrix(std::move(out));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorLayout& layout,
                            std::size_t traced_factor) {
  require(m.is_square() && layout.dimension() == m.rows(), ErrorKind::kLayout,
          "layout does not match matrix dimension");
  require(traced_factor < layout.factor_count(), ErrorKind::kLayout,
          "traced factor out of range");
  const auto& dims = layout.factor_dims();
  std::size_t before = 1;
  for (std::size_t f = 0; f < traced_factor; ++f) before *= dims[f];
  const std::size_t traced = dims[traced_factor];
  const std::size_t after = m.rows() / (before * traced);

  const auto out_dim = static_cast<Eigen::Index>(before * after);
  MatrixXc out = MatrixXc::Zero(out_dim, out_dim);
  const auto& src = m.data();
  // Row index decomposes as (a, j, b) with a < before, j < traced, b < after.
  for (std::size_t a = 0; a < before; ++a)
    for (std::size_t ap = 0; ap < before; ++ap)
      for (std::size_t j = 0; j < traced; ++j) {
        const auto r0 = static_cast<Eigen::Index>((a * traced + j) * after);
        const auto c0 = static_cast<Eigen::Index>((ap * traced + j) * after);
        out.block(static_cast<Eigen::Index>(a * after), static_cast<Eigen::Index>(ap * after),
                  static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after)) +=
            src.block(r0, c0, static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after));
      }
  return ComplexMatrix(std::move(out));
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& m) {
  const MatrixXc h = symmetrized(m.data());
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h);
  require(solver.info() == Eigen::Success, ErrorKind::kDegenerate, "eigensolver did not converge");
  // Eigen returns ascending order.
  const Eigen::Index n = h.rows();
  Eigen::VectorXd values(n);
  MatrixXc vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values(i) = solver.eigenvalues()(n - 1 - i);
    vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return {std::move(values), ComplexMatrix(std::move(vectors))};
}

ComplexMatrix hermitian_exp(const ComplexMatrix& h, double t) {
  const auto eig = hermitian_eig(h);
  const VectorXc phases =
      eig.eigenvalues.unaryExpr([t](double l) { return std::exp(Complex(0.0, -l * t)); });
  const auto& v = eig.eigenvectors.data();
  return ComplexMatrix(v * phases.asDiagonal() * v.adjoint());
}

ComplexMatrix filtered_pseudo_inverse(const ComplexMatrix& m, double sigma) {
  require(sigma > 0.0, ErrorKind::kParameter, "filter threshold must be positive");
  const auto eig = hermitian_eig(m);
  const VectorXc inv = eig.eigenvalues.unaryExpr(
      [sigma](double l) { return l >= sigma ? Complex(1.0 / l) : Complex(0.0); });
  const auto& v = eig.eigenvectors.data();
  return ComplexMatrix(v * inv.asDiagonal() * v.adjoint());
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kLayout,
          "distance: dimension mismatch");
  return (a.data() - b.data()).norm();
}

}  // namespace qssvm
