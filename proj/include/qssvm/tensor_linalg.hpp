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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qssvm {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Upper bound on the dimension of any matrix built by kron. 16^3 covers a
/// three-register object over sixteen samples.
inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Maximum entrywise |M - M^dagger| accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

/// Dense complex matrix with at least one row and column and finite entries.
/// Values are immutable once built; all arithmetic returns new matrices.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(MatrixXc data);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix from_real(const Eigen::MatrixXd& real);

  std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(data_.cols()); }
  bool is_square() const { return data_.rows() == data_.cols(); }

  Complex operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  const MatrixXc& data() const { return data_; }

  ComplexMatrix adjoint() const { return ComplexMatrix(data_.adjoint()); }
  Complex trace() const { return data_.trace(); }
  double frobenius_norm() const { return data_.norm(); }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  MatrixXc data_;
};

/// Ordered subsystem dimensions of a composite register. The first factor is
/// the most significant one in the row-major basis index.
class TensorLayout {
 public:
  TensorLayout() = default;
  TensorLayout(std::initializer_list<std::size_t> dims);
  explicit TensorLayout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& factor_dims() const { return dims_; }
  std::size_t factor_count() const { return dims_.size(); }
  std::size_t dimension() const;

  /// Layout with the given factor removed.
  TensorLayout without(std::size_t factor) const;

  friend bool operator==(const TensorLayout&, const TensorLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Eigenvalues in descending order with unitary eigenvector columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

double max_hermitian_deviation(const MatrixXc& m);

/// Returns (M + M^dagger)/2, or throws a symmetry error when M deviates from
/// Hermitian by more than kHermitianTolerance in any entry.
MatrixXc symmetrized(const MatrixXc& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dimension = kDefaultMaxDimension);

/// Contracts the 0-based factor `traced_factor` of `layout`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorLayout& layout,
                            std::size_t traced_factor);

SpectralDecomposition hermitian_eig(const ComplexMatrix& m);

/// exp(-i h t) for Hermitian h.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, double t);

/// Inverts every eigenvalue >= sigma and maps the rest to zero.
ComplexMatrix filtered_pseudo_inverse(const ComplexMatrix& m, double sigma);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qssvm
