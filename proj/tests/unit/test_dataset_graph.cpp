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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qssvm/dataset_graph.hpp"
#include "qssvm/tensor_linalg.hpp"
#include "test_support.hpp"

using namespace qssvm;
using qssvm::testing::error_kind_of;
using qssvm::testing::Rng;

namespace {

TrainingSet points(const Eigen::MatrixXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.rows());
  y(0) = 1.0;
  return TrainingSet(x, y);
}

SampleGraph random_graph(Rng& rng, std::size_t m) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);  // connected spine
  for (int e = 0; e < 6; ++e) {
    const auto a = rng.index(m), b = rng.index(m);
    if (a != b) edges.emplace_back(a, b);
  }
  return SampleGraph(m, edges);
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().maxCoeff();
}

}  // namespace

TEST_CASE("labeled rows are moved in front of unlabeled ones") {
  std::istringstream in("a,b,label\n1,2,1\n3,4,0\n5,6,-1\n");
  const auto t = load_dataset(in);
  CHECK(t.size() == 3);
  CHECK(t.labeled_count() == 2);
  CHECK(t.labels()(0) == 1.0);
  CHECK(t.labels()(1) == -1.0);
  CHECK(t.labels()(2) == 0.0);
  CHECK(t.features()(1, 0) == 5.0);
  CHECK(t.source_rows() == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("dataset parse errors carry line numbers") {
  auto parse_error = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)load_dataset(in);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kParse);
      return std::string(e.what());
    }
    FAIL("expected a parse error");
    return std::string();
  };
  CHECK(parse_error("") .find("header") != std::string::npos);
  CHECK(parse_error("a,label\n") .find("no data") != std::string::npos);
  CHECK(parse_error("a,label\n1,1\nx,0\n").find("line 3") != std::string::npos);
  CHECK(parse_error("a,label\n1,2\n").find("line 2") != std::string::npos);
  CHECK(parse_error("a,b,label\n1,2,1\n1,0\n").find("line 3") != std::string::npos);
  CHECK(parse_error("a,label\n1,0\n2,0\n").find("no labeled") != std::string::npos);
}

TEST_CASE("delimiters, comments and blank lines") {
  std::istringstream in("# comment\n\nx;y;label\n1;2;1\n\n# another\n3;4;0\n");
  const auto t = load_dataset(in);
  CHECK(t.size() == 2);
  CHECK(t.dimension() == 2);
}

TEST_CASE("the 20-row fixture counts its labels") {
  const auto t = load_dataset_file(qssvm::testing::data_path("rows_20.csv"));
  // Independent count from the raw text.
  std::ifstream raw(qssvm::testing::data_path("rows_20.csv"));
  std::string line;
  std::getline(raw, line);
  std::size_t rows = 0, labeled = 0;
  while (std::getline(raw, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto label = line.substr(line.find_last_of('\t') + 1);
    if (label != "0") ++labeled;
  }
  CHECK(t.size() == 20);
  CHECK(rows == 20);
  CHECK(t.labeled_count() == labeled);
  CHECK(t.dimension() == 3);
}

TEST_CASE("missing dataset file is an I/O error") {
  CHECK(error_kind_of([] { (void)load_dataset_file("/nonexistent/dir/data.csv"); }) ==
        ErrorKind::kIo);
}

TEST_CASE("graph normalization rejects self-loops and dedups") {
  const SampleGraph g(3, {{1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.degrees() == std::vector<std::size_t>{1, 2, 1});
  CHECK(error_kind_of([] { SampleGraph(2, {{1, 1}}); }) == ErrorKind::kParameter);
  CHECK(error_kind_of([] { SampleGraph(2, {{0, 2}}); }) == ErrorKind::kParameter);
  const SampleGraph isolated(3, {{0, 1}});
  CHECK(isolated.has_isolated_vertex());
  CHECK(error_kind_of([&] { isolated.require_no_isolated_vertices(); }) == ErrorKind::kDegree);
  CHECK(error_kind_of([&] { (void)normalized_laplacian(isolated); }) == ErrorKind::kDegree);
}

TEST_CASE("kNN on collinear points and the complete-graph case") {
  const auto line = points(Eigen::MatrixXd{{0.0}, {1.0}, {2.0}});
  CHECK(build_knn_graph(line, 1).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(build_knn_graph(line, 2).edge_count() == 3);
  CHECK(error_kind_of([&] { (void)build_knn_graph(line, 3); }) == ErrorKind::kParameter);
  CHECK(error_kind_of([&] { (void)build_knn_graph(line, 0); }) == ErrorKind::kParameter);
}

TEST_CASE("kNN ties go to the lower index") {
  // Vertex 0 is equidistant from 1 and 2; 2 and 3 pair up with each other.
  const auto t = points(Eigen::MatrixXd{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.5}});
  const auto g = build_knn_graph(t, 1);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {2, 3}});
}

TEST_CASE("kNN on the two-cluster fixture matches an all-pairs ranking") {
  const auto t = load_dataset_file(qssvm::testing::data_path("two_cluster_8.csv"));
  const auto& x = t.features();
  const std::size_t m = t.size();
  for (std::size_t k : {1, 2, 3}) {
    std::set<Edge> expect;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> order;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) order.push_back(j);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (x.row(i) - x.row(a)).norm() < (x.row(i) - x.row(b)).norm();
      });
      for (std::size_t r = 0; r < k; ++r) expect.insert({std::min(i, order[r]), std::max(i, order[r])});
    }
    const auto g = build_knn_graph(t, k);
    CHECK(std::vector<Edge>(expect.begin(), expect.end()) == g.edges());
    for (auto d : g.degrees()) CHECK(d >= k);
  }
}

TEST_CASE("graph files use original row ids") {
  std::istringstream data("a,label\n0,0\n1,1\n2,0\n");
  const auto t = load_dataset(data);  // sample order: row 1, row 0, row 2
  std::istringstream json(R"({"m": 3, "edges": [[0, 1], [1, 2]]})");
  const auto g = load_graph(json, t);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
  std::istringstream bad(R"({"m": 3, "edges": [[0, 5]]})");
  CHECK(error_kind_of([&] { (void)load_graph(bad, t); }) == ErrorKind::kParse);
  std::istringstream wrong_m(R"({"m": 4, "edges": []})");
  CHECK(error_kind_of([&] { (void)load_graph(wrong_m, t); }) == ErrorKind::kParse);
  std::istringstream junk("not json");
  CHECK(error_kind_of([&] { (void)load_graph(junk, t); }) == ErrorKind::kParse);
}

TEST_CASE("incidence matrix conventions") {
  const auto one = incidence_matrix(SampleGraph(2, {{0, 1}}));
  CHECK(one(0, 0) == -1.0);
  CHECK(one(1, 0) == 1.0);
  const auto path = incidence_matrix(SampleGraph(3, {{0, 1}, {1, 2}}));
  CHECK(path.rows() == 3);
  CHECK(path.cols() == 2);
  CHECK(path(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(path(1, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  const SampleGraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto gi = incidence_matrix(k3);
  CHECK((gi * gi.transpose() - normalized_laplacian(k3).matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Laplacians of small graphs") {
  const SampleGraph edge(2, {{0, 1}});
  const Eigen::MatrixXd e{{1, -1}, {-1, 1}};
  CHECK(combinatorial_laplacian(edge).matrix == e);
  CHECK((normalized_laplacian(edge).matrix - e).cwiseAbs().maxCoeff() < 1e-15);
  const SampleGraph p3(3, {{0, 1}, {1, 2}});
  CHECK(combinatorial_laplacian(p3).matrix == Eigen::MatrixXd{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}});
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::MatrixXd n3{{1, -s, 0}, {-s, 1, -s}, {0, -s, 1}};
  CHECK((normalized_laplacian(p3).matrix - n3).cwiseAbs().maxCoeff() < 1e-15);
  const SampleGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto ls = normalized_laplacian(star).matrix;
  CHECK(min_eigenvalue(ls) >= -1e-10);
  CHECK(max_eigenvalue(ls) <= 2.0 + 1e-10);
}

TEST_CASE("Laplacian quadratic forms and fuzzed invariants") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 6);
    const auto lc = combinatorial_laplacian(g).matrix;
    const auto ln = normalized_laplacian(g).matrix;
    Eigen::VectorXd f(6);
    for (int i = 0; i < 6; ++i) f(i) = rng.normal();
    double edge_sum = 0.0;
    for (const auto& [u, v] : g.edges()) edge_sum += std::pow(f(u) - f(v), 2);
    CHECK(f.dot(lc * f) == doctest::Approx(edge_sum).epsilon(1e-12));
    CHECK(lc.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(min_eigenvalue(lc) >= -1e-10);
    CHECK(min_eigenvalue(ln) >= -1e-10);
    CHECK(max_eigenvalue(ln) <= 2.0 + 1e-10);
    CHECK((ln.diagonal().array() - 1.0).abs().maxCoeff() < 1e-15);
    const auto gi = incidence_matrix(g);
    CHECK((gi.rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK((gi * gi.transpose() - ln).cwiseAbs().maxCoeff() < 1e-12);
  }
}
