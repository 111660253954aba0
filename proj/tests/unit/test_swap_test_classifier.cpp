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

#include <doctest.h>

#include <cmath>

#include "qssvm/classical_svm.hpp"
#include "qssvm/dataset_graph.hpp"
#include "qssvm/swap_test_classifier.hpp"
#include "test_support.hpp"

using namespace qssvm;
using qssvm::testing::error_kind_of;
using qssvm::testing::max_abs;
using qssvm::testing::Rng;

namespace {

TrainingSet training_of(const Eigen::MatrixXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.rows());
  y(0) = 1.0;
  return TrainingSet(x, y);
}

StateVector real_state(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return StateVector::from_real(v);
}

ModelSolution fixture_model(const TrainingSet& t) {
  const Eigen::MatrixXd k = kernel_matrix(t, KernelSpec::linear());
  const auto l = normalized_laplacian(build_knn_graph(t, 2)).matrix;
  return solve_classical(assemble_system(k, l, t.labels(), 1.0), 0.05, KernelSpec::linear(),
                         t.features());
}

}  // namespace

TEST_CASE("query state") {
  const auto one = query_state(Eigen::Vector2d(3, 4), training_of(Eigen::MatrixXd{{1, 1}}));
  CHECK(max_abs(one.amplitudes() - Eigen::Vector2d(0.6, 0.8).cast<Complex>()) < 1e-15);
  const auto two = query_state(Eigen::Vector2d(1, 0), training_of(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(two.layout() == TensorLayout{2, 2});
  CHECK(max_abs(two.amplitudes() - Eigen::Vector4d(1, 0, 1, 0).cast<Complex>() / std::sqrt(2.0)) < 1e-15);
  Rng rng(81);
  const auto t = training_of(rng.real_matrix(5, 3));
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Vector3d x(rng.normal(), rng.normal(), rng.normal());
    CHECK(std::abs(query_state(x * 1e3, t).amplitudes().norm() - 1.0) < 1e-12);
  }
  CHECK(error_kind_of([&] { (void)query_state(Eigen::Vector3d::Zero(), t); }) == ErrorKind::kEncoding);
  CHECK(error_kind_of([&] { (void)query_state(Eigen::Vector2d(1, 0), t); }) == ErrorKind::kLayout);
}

TEST_CASE("expansion state") {
  const auto t = training_of(Eigen::MatrixXd{{3, 4}, {1, 0}});
  const auto e1 = expansion_state(Eigen::Vector2d(1, 0), t);
  CHECK(max_abs(e1.amplitudes() - Eigen::Vector4d(0.6, 0.8, 0, 0).cast<Complex>()) < 1e-15);
  const auto uniform = expansion_state(Eigen::Vector2d(2, 2), training_of(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(max_abs(uniform.amplitudes() - Eigen::Vector4d(1, 0, 0, 1).cast<Complex>() / std::sqrt(2.0)) < 1e-15);
  CHECK(error_kind_of([&] { (void)expansion_state(Eigen::Vector2d::Zero(), t); }) == ErrorKind::kDegenerate);
  CHECK(error_kind_of([&] { (void)expansion_state(Eigen::Vector3d(1, 1, 1), t); }) == ErrorKind::kLayout);
  CHECK(error_kind_of([&] {
          (void)expansion_state(Eigen::Vector2d(1, 1), training_of(Eigen::MatrixXd{{1, 0}, {0, 0}}));
        }) == ErrorKind::kEncoding);
}

TEST_CASE("overlap is a positive multiple of the kernel expansion") {
  const auto t = load_dataset_file(qssvm::testing::data_path("two_cluster_8.csv"));
  const auto model = fixture_model(t);
  const auto s = expansion_state(model.alpha, t);
  const auto grid = load_feature_table_file(qssvm::testing::data_path("test_grid_20.csv")).features;
  for (Eigen::Index q = 0; q < grid.rows(); ++q) {
    const Eigen::VectorXd x = grid.row(q).transpose();
    const double ov = s.amplitudes().dot(query_state(x, t).amplitudes()).real();
    double score = 0.0;
    for (Eigen::Index j = 0; j < t.features().rows(); ++j)
      score += model.alpha(j) * x.dot(t.features().row(j).transpose());
    // <x_q|s> = score / (sqrt(m) |x| sqrt(sum alpha_j^2 |x_j|^2)).
    double norm_s = 0.0;
    for (Eigen::Index j = 0; j < t.features().rows(); ++j)
      norm_s += std::pow(model.alpha(j) * t.features().row(j).norm(), 2);
    const double c = std::sqrt(8.0) * x.norm() * std::sqrt(norm_s);
    CHECK(std::abs(ov - score / c) < 1e-12);
  }
}

TEST_CASE("overlap probability examples") {
  const auto psi = real_state({0.6, 0.8});
  CHECK(overlap_probability(psi, psi, 0, 1).probability == doctest::Approx(0.0));
  CHECK(overlap_probability(psi, real_state({0.8, -0.6}), 0, 1).probability == doctest::Approx(0.5));
  CHECK(overlap_probability(psi, real_state({-0.6, -0.8}), 0, 1).probability == doctest::Approx(1.0));
  Rng rng(82);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector a(rng.unit_vector(4), TensorLayout{4});
    const StateVector b(rng.unit_vector(4), TensorLayout{4});
    const auto est = overlap_probability(a, b, 0, 0);
    CHECK(est.exact_overlap == doctest::Approx(a.amplitudes().dot(b.amplitudes()).real()));
    CHECK(std::abs(est.probability - 0.5 * (1.0 - est.exact_overlap)) < 1e-14);
    CHECK(est.shots == 0);
  }
  CHECK(error_kind_of([&] { (void)overlap_probability(psi, real_state({1, 0, 0}), 0, 0); }) ==
        ErrorKind::kLayout);
}

TEST_CASE("sampled overlap estimates concentrate") {
  const auto psi = real_state({1.0, 0.0});
  const std::size_t shots = 10000;
  // Overlaps 1, 1/2 and 0 give P = 0, 1/4 and 1/2.
  for (double ov : {1.0, 0.5, 0.0}) {
    const auto phi = real_state({ov, std::sqrt(1.0 - ov * ov)});
    const double p = 0.5 * (1.0 - ov);
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto est = overlap_probability(psi, phi, shots, seed);
      CHECK(est.shots == shots);
      CHECK(est.probability >= 0.0);
      CHECK(est.probability <= 1.0);
      if (std::abs(est.probability - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots)))
        ++inside;
    }
    CHECK(inside >= 99);
  }
  const auto phi = real_state({0.3, 0.7});
  CHECK(overlap_probability(psi, phi, 500, 3).probability == overlap_probability(psi, phi, 500, 3).probability);
}

TEST_CASE("classification examples") {
  const auto t = training_of(Eigen::MatrixXd{{1, 2}, {-2, 1}, {0.5, -1}});
  const Eigen::Vector3d alpha(1, 0, 0);
  const Eigen::Vector2d x1(1, 2);
  CHECK(classify(alpha, x1, t, 0, 0).label == 1);
  CHECK(classify(-alpha, x1, t, 0, 0).label == -1);
  const auto sampled = classify(alpha, x1, t, 1000, 5);
  CHECK(sampled.label == 1);
  CHECK_FALSE(sampled.ambiguous);
  // Orthogonal query: P is exactly 1/2, the tie goes to +1 and is flagged when sampled.
  const Eigen::Vector2d orth(-2, 1);
  CHECK(classify(alpha, orth, t, 0, 0).label == 1);
  CHECK(classify(alpha, orth, t, 0, 0).p_estimate == doctest::Approx(0.5));
  CHECK(classify(alpha, orth, t, 10000, 11).ambiguous);
}

TEST_CASE("analytic classification agrees with the classical predictor") {
  const auto t = load_dataset_file(qssvm::testing::data_path("two_cluster_8.csv"));
  const auto model = fixture_model(t);
  const auto grid = load_feature_table_file(qssvm::testing::data_path("test_grid_20.csv")).features;
  REQUIRE(grid.rows() == 20);
  for (Eigen::Index q = 0; q < grid.rows(); ++q) {
    const Eigen::VectorXd x = grid.row(q).transpose();
    const auto pred = predict(model, x);
    if (std::abs(pred.score) < 1e-12) continue;
    CHECK(classify(model.alpha, x, t, 0, 0).label == pred.label);
  }
  Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = 2 + rng.index(6);
    const auto tr = training_of(rng.real_matrix(static_cast<Eigen::Index>(m), 3));
    Eigen::VectorXd alpha(static_cast<Eigen::Index>(m));
    for (auto& a : alpha) a = rng.normal();
    const Eigen::Vector3d x(rng.normal(), rng.normal(), rng.normal());
    const double score = (tr.features() * x).dot(alpha);
    if (std::abs(score) < 1e-12) continue;
    const int label = classify(alpha, x, tr, 0, 0).label;
    CHECK(label == sign_label(score));
    CHECK(classify(alpha * std::exp(rng.uniform(-4.0, 4.0)), x, tr, 0, 0).label == label);
  }
}
