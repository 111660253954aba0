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
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "qssvm/dataset_graph.hpp"
#include "qssvm/pipeline.hpp"
#include "test_support.hpp"

using namespace qssvm;
using qssvm::testing::data_path;
using qssvm::testing::error_kind_of;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("qssvm_pipeline_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("run configuration ranges") {
  RunConfig cfg;
  cfg.validate();
  CHECK(cfg.gamma == 1.0);
  CHECK(cfg.knn == 3);
  CHECK(cfg.sigma_thresh == 0.05);
  CHECK(cfg.clock_qubits == 8);
  CHECK(cfg.delta == 1e-3);
  CHECK(cfg.shots == 0);
  CHECK(cfg.seed == 42);
  CHECK(cfg.laplacian == LaplacianKind::kNormalized);
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return error_kind_of([&] { c.validate(); });
  };
  CHECK(bad([](RunConfig& c) { c.gamma = 0.0; }) == ErrorKind::kParameter);
  CHECK(bad([](RunConfig& c) { c.knn = 0; }) == ErrorKind::kParameter);
  CHECK(bad([](RunConfig& c) { c.sigma_thresh = 1.0; }) == ErrorKind::kParameter);
  CHECK(bad([](RunConfig& c) { c.sigma_thresh = 0.0; }) == ErrorKind::kParameter);
  CHECK(bad([](RunConfig& c) { c.clock_qubits = 13; }) == ErrorKind::kParameter);
  CHECK(bad([](RunConfig& c) { c.delta = 0.0; }) == ErrorKind::kParameter);
}

TEST_CASE("simulate on the two-cluster fixture") {
  RunConfig cfg;
  cfg.knn = 2;
  const auto report = run_pipeline(cfg, data_path("two_cluster_8.csv"), fs::path(data_path("test_grid_20.csv")));
  REQUIRE(report.classical);
  REQUIRE(report.quantum);
  CHECK(report.command == "simulate");
  CHECK(report.dataset.samples == 8);
  CHECK(report.dataset.labeled == 4);
  CHECK(report.classical->residual <= 1e-8);
  CHECK(report.classical->gradient_norm <= 1e-6);
  CHECK(report.quantum->fidelity >= 0.99);
  CHECK(report.quantum->fidelity <= 1.0 + 1e-12);
  CHECK(report.quantum->multiply_fidelity >= 0.999);
  CHECK(report.quantum->a_hat_checksum == report.classical->a_hat_checksum);
  REQUIRE(report.quantum->density_route_deviation);
  CHECK(*report.quantum->density_route_deviation <= 1e-10);
  REQUIRE(report.prediction_agreement);
  CHECK(*report.prediction_agreement == 1.0);
  CHECK(report.predictions.size() == 20);
  CHECK(report.timings.empty());
  for (const auto& p : report.predictions) {
    REQUIRE(p.quantum_label);
    CHECK(*p.quantum_label == p.classical_label);
  }
}

TEST_CASE("reports are deterministic") {
  RunConfig cfg;
  cfg.shots = 2000;
  const auto a = report_to_json(run_pipeline(cfg, data_path("two_cluster_8.csv"), fs::path(data_path("test_grid_20.csv")))).dump();
  const auto b = report_to_json(run_pipeline(cfg, data_path("two_cluster_8.csv"), fs::path(data_path("test_grid_20.csv")))).dump();
  CHECK(a == b);
  cfg.seed = 43;
  const auto c = report_to_json(run_pipeline(cfg, data_path("two_cluster_8.csv"), fs::path(data_path("test_grid_20.csv")))).dump();
  CHECK(a != c);
}

TEST_CASE("train runs only the classical path") {
  const auto training = load_dataset_file(data_path("two_cluster_8.csv"));
  const auto report = run_train(RunConfig{}, training, load_queries(std::nullopt, training));
  CHECK(report.command == "train");
  CHECK(report.classical);
  CHECK_FALSE(report.quantum);
  CHECK_FALSE(report.prediction_agreement);
  CHECK(report.predictions.size() == 8);
  const auto j = report_to_json(report);
  CHECK(j.contains("classical_alpha"));
  CHECK_FALSE(j.contains("quantum_fidelity"));
}

TEST_CASE("graph files and isolated vertices") {
  const auto edgeless = write_file("edgeless.json", R"({"m": 8, "edges": []})");
  RunConfig cfg;
  cfg.graph_file = edgeless;
  cfg.laplacian = LaplacianKind::kCombinatorial;
  const auto training = load_dataset_file(data_path("two_cluster_8.csv"));
  CHECK(error_kind_of([&] { (void)prepare_problem(cfg, training); }) == ErrorKind::kDegree);
  CHECK(error_message_of([&] { (void)prepare_problem(cfg, training); }).rfind("graph: ", 0) == 0);

  const auto ring = write_file("ring.json",
                               R"({"m": 8, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[7,0]]})");
  cfg.graph_file = ring;
  const auto problem = prepare_problem(cfg, training);
  CHECK(problem.graph.edge_count() == 8);
  const auto report = run_pipeline(cfg, training, load_queries(std::nullopt, training));
  CHECK(report.quantum);
  CHECK_FALSE(report.quantum->density_route_deviation);
  CHECK(report_to_json(report)["config"]["graph"]["file"] == ring.string());
}

TEST_CASE("missing inputs surface as io errors") {
  CHECK(error_kind_of([] { (void)run_pipeline(RunConfig{}, "/nonexistent/data.csv", std::nullopt); }) ==
        ErrorKind::kIo);
  const auto training = load_dataset_file(data_path("two_cluster_8.csv"));
  CHECK(error_kind_of([&] { (void)load_queries(fs::path("/nonexistent/grid.csv"), training); }) ==
        ErrorKind::kIo);
}

TEST_CASE("log-log slope") {
  std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
  std::vector<double> errs;
  for (double dt : dts) errs.push_back(3.0 * dt * dt);
  CHECK(log_log_slope(dts, errs) == doctest::Approx(2.0));
  CHECK(error_kind_of([] { (void)log_log_slope({0.1, 0.05}, {1.0, 0.5}); }) == ErrorKind::kParameter);
  CHECK(error_kind_of([] { (void)log_log_slope({0.1, 0.05, 0.01}, {1.0, 0.0, 0.1}); }) ==
        ErrorKind::kDegenerate);
}

TEST_CASE("lmr bench on the fixture") {
  const auto training = load_dataset_file(data_path("two_cluster_8.csv"));
  const auto report = run_bench(RunConfig{}, training);
  REQUIRE(report.lmr);
  REQUIRE(report.lmr->terms.size() == 3);
  CHECK(report.lmr->terms[0].name == "K");
  CHECK(report.lmr->terms[1].name == "KK");
  CHECK(report.lmr->terms[2].name == "KLK");
  for (const auto& t : report.lmr->terms) {
    CHECK(t.slope >= 1.8);
    CHECK(t.slope <= 2.2);
    CHECK(t.steps == 1000);
    CHECK(t.trajectory_error <= 10.0 * 1e-3);
    CHECK(t.halving_ratio >= 1.6);
    CHECK(t.halving_ratio <= 2.4);
  }
  const auto j = report_to_json(report);
  CHECK(j["lmr_slopes"]["KLK"].get<double>() == report.lmr->terms[2].slope);
  CHECK(error_kind_of([&] { (void)run_bench(RunConfig{}, training, {0.1, 0.05}); }) == ErrorKind::kParameter);
}

TEST_CASE("cost model regimes") {
  for (std::size_t m : {64u, 4096u}) {
    const auto full = cost_model({m, 3, m});
    CHECK(full.regime == "full_rank");
    CHECK(full.quantum_m_exponent == doctest::Approx(3.0));
    CHECK(full.dequantized_m_exponent == doctest::Approx(9.0));
    const double md = static_cast<double>(m);
    CHECK(full.quantum_cost == doctest::Approx(std::pow(md, 3) * 1e3 * std::log(3.0 * md)));
    CHECK(full.dequantized_cost == doctest::Approx(std::pow(md, 9) * 1e6));

    const auto low = cost_model({m, 3, 1, 0.2, 1.5, 0.01});
    CHECK(low.regime == "constant_rank");
    CHECK(low.quantum_m_exponent == 0.0);
    CHECK(low.dequantized_m_exponent == 0.0);
    CHECK(low.quantum_cost == doctest::Approx(std::pow(0.2, -3) * std::log(3.0 * md)));
    CHECK(low.dequantized_cost == doctest::Approx(std::pow(0.2, -6) * std::pow(1.5, 6) * std::pow(std::log(100.0), 3)));

    const auto q = static_cast<std::size_t>(std::llround(std::pow(md, 1.0 / 6.0)));
    const auto slow = cost_model({m, 3, q});
    CHECK(slow.regime == "slow_growth");
    CHECK(slow.quantum_m_exponent == doctest::Approx(0.5));
    CHECK(slow.dequantized_m_exponent == doctest::Approx(1.5));
  }
  CHECK(kDequantizedRankExponent == 9);
  CHECK(kQuantumRankExponent == 3);
  CHECK(error_kind_of([] { (void)cost_model({4, 1, 5}); }) == ErrorKind::kParameter);
  CHECK(error_kind_of([] { (void)cost_model({4, 1, 0}); }) == ErrorKind::kParameter);
  CHECK(error_kind_of([] { (void)cost_model({4, 1, 2, 1.0}); }) == ErrorKind::kParameter);
  const auto one = cost_model({1, 1, 1});
  CHECK(one.quantum_m_exponent == 0.0);
  const auto j = cost_model_to_json(CostModelParams{64, 3, 64}, cost_model({64, 3, 64}));
  CHECK(j["regime"] == "full_rank");
  CHECK(j["rank_exponents"]["dequantized"] == 9);
}

TEST_CASE("report emission") {
  const auto training = load_dataset_file(data_path("svm_4.csv"));
  const auto j = report_to_json(run_train(RunConfig{}, training, load_queries(std::nullopt, training)));
  const auto path = scratch_dir() / "report.json";
  emit_report(j, path);
  CHECK(nlohmann::ordered_json::parse(slurp(path)) == j);
  const auto msg = error_message_of([&] { emit_report(j, "/nonexistent/dir/report.json"); });
  CHECK(msg.find("/nonexistent/dir/report.json") != std::string::npos);
  CHECK(error_kind_of([&] { emit_report(j, "/nonexistent/dir/report.json"); }) == ErrorKind::kIo);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys.front() == "schema_version");
  CHECK(keys[1] == "command");
  CHECK(keys[2] == "config");
}

TEST_CASE("matrix checksum") {
  Eigen::MatrixXd a{{1.0, 0.0}, {2.0, 3.0}};
  Eigen::MatrixXd b = a;
  b(0, 1) = -0.0;
  CHECK(matrix_checksum(a) == matrix_checksum(b));
  CHECK(matrix_checksum(a).size() == 16);
  b(1, 1) = std::nextafter(3.0, 4.0);
  CHECK(matrix_checksum(a) != matrix_checksum(b));
  CHECK(matrix_checksum(Eigen::MatrixXd::Zero(2, 3)) != matrix_checksum(Eigen::MatrixXd::Zero(3, 2)));
}
