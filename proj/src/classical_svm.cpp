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

#include "qssvm/classical_svm.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qssvm/error.hpp"
#include "qssvm/tensor_linalg.hpp"

namespace qssvm {
namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(!s.empty() && ec == std::errc() && ptr == s.data() + s.size(), ErrorKind::kParse,
          "kernel spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

KernelSpec KernelSpec::polynomial(int degree, double offset) {
  require(degree >= 1, ErrorKind::kParameter, "polynomial kernel degree must be >= 1");
  require(std::isfinite(offset), ErrorKind::kParameter, "polynomial offset must be finite");
  KernelSpec k;
  k.kind = Kind::kPolynomial;
  k.degree = degree;
  k.offset = offset;
  return k;
}

KernelSpec KernelSpec::rbf(double width) {
  require(width > 0.0 && std::isfinite(width), ErrorKind::kParameter, "rbf width must be > 0");
  KernelSpec k;
  k.kind = Kind::kRbf;
  k.width = width;
  return k;
}

KernelSpec KernelSpec::parse(std::string_view text) {
  if (text == "linear") return linear();
  if (text.starts_with("poly:")) {
    const auto args = text.substr(5);
    const auto comma = args.find(',');
    require(comma != std::string_view::npos, ErrorKind::kParse, "expected poly:d,c");
    const double d = parse_double(args.substr(0, comma), "degree");
    require(d == std::floor(d), ErrorKind::kParameter, "polynomial degree must be an integer");
    return polynomial(static_cast<int>(d), parse_double(args.substr(comma + 1), "offset"));
  }
  if (text.starts_with("rbf:")) return rbf(parse_double(text.substr(4), "width"));
  fail(ErrorKind::kParse, "unknown kernel '" + std::string(text) + "'");
}

std::string KernelSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::kLinear: os << "linear"; break;
    case Kind::kPolynomial: os << "poly:" << degree << ',' << offset; break;
    case Kind::kRbf: os << "rbf:" << width; break;
  }
  return os.str();
}

double KernelSpec::evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& z) const {
  switch (kind) {
    case Kind::kLinear: return x.dot(z);
    case Kind::kPolynomial: return std::pow(x.dot(z) + offset, degree);
    case Kind::kRbf: return std::exp(-(x - z).squaredNorm() / (2.0 * width * width));
  }
  return 0.0;
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& features, const KernelSpec& spec) {
  if (spec.kind == KernelSpec::Kind::kLinear) return features * features.transpose();
  const Eigen::Index m = features.rows();
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j)
      k(i, j) = k(j, i) = spec.evaluate(features.row(i).transpose(), features.row(j).transpose());
  return k;
}

Eigen::MatrixXd kernel_matrix(const TrainingSet& x, const KernelSpec& spec) {
  return kernel_matrix(x.features(), spec);
}

AssembledSystem assemble_system(const Eigen::MatrixXd& k, const Eigen::MatrixXd& laplacian,
                                const Eigen::VectorXd& y, double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), ErrorKind::kParameter, "gamma must be > 0");
  require(k.rows() == k.cols() && laplacian.rows() == k.rows() && laplacian.cols() == k.cols() &&
              y.size() == k.rows(),
          ErrorKind::kLayout, "kernel, Laplacian and labels disagree in dimension");
  AssembledSystem sys;
  const Eigen::MatrixXd kk = k * k;
  const Eigen::MatrixXd klk = k * laplacian * k;
  sys.a_matrix = k / gamma + kk + klk / gamma;
  // Products of symmetric factors drift by rounding; keep A exactly symmetric.
  sys.a_matrix = 0.5 * (sys.a_matrix + sys.a_matrix.transpose()).eval();
  sys.rhs = k * y;
  sys.gamma = gamma;
  sys.trace_a = sys.a_matrix.trace();
  require(sys.trace_a > 0.0, ErrorKind::kDegenerate, "system matrix has zero trace");
  return sys;
}

ModelSolution solve_classical(const AssembledSystem& sys, double sigma_filter,
                              const KernelSpec& kernel, const Eigen::MatrixXd& training_features) {
  require(sigma_filter >= 0.0, ErrorKind::kParameter, "sigma filter must be >= 0");
  const auto a_hat = ComplexMatrix::from_real(sys.a_hat());
  const auto eig = hermitian_eig(a_hat);
  const double cutoff = sigma_filter > 0.0 ? sigma_filter : 1e-12 * eig.eigenvalues(0);

  ModelSolution sol;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) >= cutoff) sol.retained_eigenvalues.push_back(eig.eigenvalues(i));
  require(!sol.retained_eigenvalues.empty(), ErrorKind::kDegenerate,
          "every eigenvalue of the normalized system falls below the filter threshold");

  const auto pinv = filtered_pseudo_inverse(a_hat, cutoff);
  sol.alpha = (pinv.data().real() * sys.rhs) / sys.trace_a;
  sol.gamma = sys.gamma;
  sol.kernel = kernel;
  sol.sigma_filter = sigma_filter;
  sol.training_features = training_features;
  return sol;
}

Prediction predict(const ModelSolution& model, const Eigen::VectorXd& x_new) {
  require(x_new.size() == model.training_features.cols(), ErrorKind::kLayout,
          "query dimension does not match training features");
  double score = 0.0;
  for (Eigen::Index j = 0; j < model.alpha.size(); ++j)
    score += model.alpha(j) * model.kernel.evaluate(model.training_features.row(j).transpose(), x_new);
  return {score, sign_label(score)};
}

double training_objective(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& k,
                          const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& y,
                          double gamma) {
  const Eigen::VectorXd f = k * alpha;
  return -gamma * alpha.dot(k * y) + 0.5 * gamma * f.squaredNorm() + 0.5 * alpha.dot(f) +
         0.5 * f.dot(laplacian * f);
}

}  // namespace qssvm
