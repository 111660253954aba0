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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qssvm/classical_svm.hpp"
#include "qssvm/dataset_graph.hpp"

namespace qssvm {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct RunConfig {
  double gamma = 1.0;
  KernelSpec kernel;
  /// Neighbours per vertex; ignored when graph_file is set.
  std::size_t knn = 3;
  std::optional<std::filesystem::path> graph_file;
  double sigma_thresh = 0.05;
  std::size_t clock_qubits = 8;
  double delta = 1e-3;
  /// 0 is the analytic swap test.
  std::size_t shots = 0;
  std::uint64_t seed = 42;
  LaplacianKind laplacian = LaplacianKind::kNormalized;
  bool include_timings = false;

  void validate() const;
};

/// Everything the classical and quantum paths share.
struct Problem {
  TrainingSet training;
  SampleGraph graph;
  LaplacianMatrix laplacian;
  Eigen::MatrixXd kernel;
  AssembledSystem system;
};

Problem prepare_problem(const RunConfig& cfg, TrainingSet training);

struct ClassicalStage {
  ModelSolution model;
  /// |A alpha - K y| / |K y|
  double residual = 0.0;
  double gradient_norm = 0.0;
  double objective = 0.0;
  std::string a_hat_checksum;
};

ClassicalStage run_classical(const RunConfig& cfg, const Problem& problem);

struct QuantumStage {
  Eigen::VectorXd alpha;  // unit norm, real part of the solution state
  double fidelity = 0.0;
  double hhl_success_probability = 0.0;
  double multiply_fidelity = 0.0;
  double multiply_success_probability = 0.0;
  double evolution_time = 0.0;
  std::vector<double> retained_eigenvalues;
  std::string a_hat_checksum;
  /// |A_hat - W B_joint / Tr A|_F for the program-state route; only defined for
  /// the linear kernel with the normalized Laplacian.
  std::optional<double> density_route_deviation;
};

QuantumStage run_quantum(const RunConfig& cfg, const Problem& problem,
                         const ClassicalStage& classical);

struct PredictionRecord {
  Eigen::VectorXd point;
  double classical_score = 0.0;
  int classical_label = 1;
  std::optional<int> quantum_label;
  std::optional<double> p_estimate;
  bool ambiguous = false;
};

struct LmrTerm {
  std::string name;
  std::vector<double> single_step_errors;
  double slope = 0.0;
  std::size_t steps = 0;
  double trajectory_error = 0.0;
  double trajectory_error_doubled = 0.0;
  double halving_ratio = 0.0;
};

struct LmrBench {
  std::vector<double> dts;
  double total_time = 1.0;
  double delta = 1e-3;
  std::vector<LmrTerm> terms;
};

inline const std::vector<double> kDefaultBenchSteps{0.2, 0.1, 0.05, 0.025};

/// Least-squares slope of log(err) against log(dt).
double log_log_slope(const std::vector<double>& dts, const std::vector<double>& errors);

/// Single-step and trajectory errors of the K, KK and KLK channels against exact
/// conjugation, starting from the label density.
LmrBench bench_lmr(const RunConfig& cfg, const Problem& problem,
                   const std::vector<double>& dts = kDefaultBenchSteps, double total_time = 1.0);

struct DatasetSummary {
  std::size_t samples = 0;
  std::size_t features = 0;
  std::size_t labeled = 0;
  std::size_t graph_edges = 0;
};

struct RunReport {
  std::string command;
  RunConfig config;
  DatasetSummary dataset;
  std::optional<ClassicalStage> classical;
  std::optional<QuantumStage> quantum;
  std::vector<PredictionRecord> predictions;
  std::optional<double> prediction_agreement;
  std::optional<LmrBench> lmr;
  std::vector<std::pair<std::string, double>> timings;
};

/// Features of the test file, or of the training set when no file is given.
Eigen::MatrixXd load_queries(const std::optional<std::filesystem::path>& testset,
                             const TrainingSet& training);

/// Classical training plus predictions on `queries` (the training points when
/// empty).
RunReport run_train(const RunConfig& cfg, TrainingSet training, const Eigen::MatrixXd& queries);

/// Full simulated pipeline next to the classical solution.
RunReport run_pipeline(const RunConfig& cfg, TrainingSet training, const Eigen::MatrixXd& queries);

RunReport run_pipeline(const RunConfig& cfg, const std::filesystem::path& dataset,
                       const std::optional<std::filesystem::path>& testset);

RunReport run_bench(const RunConfig& cfg, TrainingSet training,
                    const std::vector<double>& dts = kDefaultBenchSteps);

struct CostModelParams {
  std::size_t m = 1;
  std::size_t p = 1;
  std::size_t q = 1;
  double epsilon = 0.1;
  double eta = 1.0;
  /// log^3(1/delta) vanishes at delta = 1, so the default is 1/e.
  double delta_fail = 0.36787944117144233;

  void validate() const;
};

inline constexpr int kQuantumRankExponent = 3;
/// Rank exponent of the dequantized bound on the diagonal family with q equal
/// entries and sigma = 1/q, taken as 9. Substituting the family's norms into
/// |F|_F^6 |F|^22 / sigma^28 directly gives q^3; see the README.
inline constexpr int kDequantizedRankExponent = 9;

struct CostModelResult {
  double quantum_cost = 0.0;
  double dequantized_cost = 0.0;
  std::string regime;
  /// Exponent of m implied by q: rank exponent times log_m q.
  double quantum_m_exponent = 0.0;
  double dequantized_m_exponent = 0.0;
};

/// quantum = q^3 eps^-3 ln(m p); dequantized = q^9 eps^-6 eta^6 ln^3(1/delta).
CostModelResult cost_model(const CostModelParams& params);

nlohmann::ordered_json report_to_json(const RunReport& report);
nlohmann::ordered_json cost_model_to_json(const CostModelParams& params,
                                          const CostModelResult& result);

/// Pretty-printed JSON plus a trailing newline.
void emit_report(const nlohmann::ordered_json& report, const std::filesystem::path& path);

/// FNV-1a over the raw matrix entries, as 16 hex digits.
std::string matrix_checksum(const Eigen::MatrixXd& m);

}  // namespace qssvm
