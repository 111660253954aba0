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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qssvm/dataset_graph.hpp"

namespace qssvm {

struct KernelSpec {
  enum class Kind { kLinear, kPolynomial, kRbf };

  Kind kind = Kind::kLinear;
  int degree = 1;       // polynomial
  double offset = 0.0;  // polynomial
  double width = 1.0;   // rbf

  static KernelSpec linear() { return {}; }
  static KernelSpec polynomial(int degree, double offset);
  static KernelSpec rbf(double width);

  /// Accepts `linear`, `poly:d,c` and `rbf:w`.
  static KernelSpec parse(std::string_view text);
  std::string to_string() const;

  /// linear: <x, z>; polynomial: (<x, z> + c)^d; rbf: exp(-|x - z|^2 / (2 w^2)).
  double evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const;
};

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& features, const KernelSpec& spec);
Eigen::MatrixXd kernel_matrix(const TrainingSet& x, const KernelSpec& spec);

/// A = K/gamma + K K + K L K/gamma with right-hand side K y.
struct AssembledSystem {
  Eigen::MatrixXd a_matrix;
  Eigen::VectorXd rhs;
  double gamma = 1.0;
  double trace_a = 0.0;

  /// A / Tr(A).
  Eigen::MatrixXd a_hat() const { return a_matrix / trace_a; }
};

AssembledSystem assemble_system(const Eigen::MatrixXd& k, const Eigen::MatrixXd& laplacian,
                                const Eigen::VectorXd& y, double gamma);

struct ModelSolution {
  Eigen::VectorXd alpha;
  double gamma = 1.0;
  KernelSpec kernel;
  double sigma_filter = 0.0;
  Eigen::MatrixXd training_features;
  /// Eigenvalues of A/Tr(A) kept by the filter, descending.
  std::vector<double> retained_eigenvalues;
};

/// alpha = pinv_sigma(A/Tr A) (K y / Tr A). Eigenvalues of A/Tr(A) below
/// `sigma_filter` are dropped; a zero threshold keeps everything above
/// 1e-12 times the largest eigenvalue.
ModelSolution solve_classical(const AssembledSystem& sys, double sigma_filter,
                              const KernelSpec& kernel, const Eigen::MatrixXd& training_features);

struct Prediction {
  double score = 0.0;
  int label = 1;
};

/// sign(0) is +1.
inline int sign_label(double score) { return score < 0.0 ? -1 : 1; }

Prediction predict(const ModelSolution& model, const Eigen::VectorXd& x_new);

/// Matrix form of the training objective:
///   -gamma a^T K y + gamma/2 a^T K K a + 1/2 a^T K a + 1/2 a^T K L K a.
/// Its gradient is gamma times the residual of the linear system.
double training_objective(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& k,
                          const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& y,
                          double gamma);

}  // namespace qssvm
