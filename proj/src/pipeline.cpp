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

#include "qssvm/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string_view>

#include "qssvm/density_encoding.hpp"
#include "qssvm/error.hpp"
#include "qssvm/hhl_solver.hpp"
#include "qssvm/lmr_channels.hpp"
#include "qssvm/swap_test_classifier.hpp"

namespace qssvm {
namespace {

using json = nlohmann::ordered_json;

template <class F>
auto staged(std::string_view stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
  }
}

class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

  void lap(std::string name) {
    const auto now = std::chrono::steady_clock::now();
    sink_.emplace_back(std::move(name),
                       std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

DensityMatrix density_of(const Eigen::MatrixXd& m) {
  const double tr = m.trace();
  require(tr > 0.0, ErrorKind::kDegenerate, "matrix has non-positive trace");
  return DensityMatrix(ComplexMatrix::from_real(m / tr));
}

bool uses_encodings(const RunConfig& cfg) {
  return cfg.kernel.kind == KernelSpec::Kind::kLinear &&
         cfg.laplacian == LaplacianKind::kNormalized;
}

struct Densities {
  DensityMatrix k;
  DensityMatrix l;
};

// The data and incidence encodings when they apply, otherwise the trace
// normalized matrices (identical in the encoded case).
Densities problem_densities(const RunConfig& cfg, const Problem& problem) {
  if (uses_encodings(cfg))
    return {kernel_density(problem.training), laplacian_density(problem.graph)};
  return {density_of(problem.kernel), density_of(problem.laplacian.matrix)};
}

std::vector<PredictionRecord> classical_predictions(const ModelSolution& model,
                                                    const Eigen::MatrixXd& queries) {
  std::vector<PredictionRecord> out;
  for (Eigen::Index i = 0; i < queries.rows(); ++i) {
    PredictionRecord rec;
    rec.point = queries.row(i).transpose();
    const auto pred = predict(model, rec.point);
    rec.classical_score = pred.score;
    rec.classical_label = pred.label;
    out.push_back(std::move(rec));
  }
  return out;
}

DatasetSummary summarize(const Problem& p) {
  return {p.training.size(), p.training.dimension(), p.training.labeled_count(),
          p.graph.edge_count()};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const char* laplacian_name(LaplacianKind kind) {
  return kind == LaplacianKind::kNormalized ? "normalized" : "combinatorial";
}

}  // namespace

void RunConfig::validate() const {
  require(gamma > 0.0 && std::isfinite(gamma), ErrorKind::kParameter, "gamma must be positive");
  require(knn >= 1, ErrorKind::kParameter, "knn must be at least 1");
  require(sigma_thresh > 0.0 && sigma_thresh < 1.0, ErrorKind::kParameter,
          "sigma_thresh must lie in (0, 1)");
  require(clock_qubits >= 2 && clock_qubits <= 12, ErrorKind::kParameter,
          "clock_qubits must lie in [2, 12]");
  require(delta > 0.0 && delta <= 1.0, ErrorKind::kParameter, "delta must lie in (0, 1]");
}

Problem prepare_problem(const RunConfig& cfg, TrainingSet training) {
  cfg.validate();
  SampleGraph graph = staged("graph", [&] {
    return cfg.graph_file ? load_graph_file(*cfg.graph_file, training)
                          : build_knn_graph(training, cfg.knn);
  });
  staged("graph", [&] { graph.require_no_isolated_vertices(); });
  auto laplacian = staged("laplacian", [&] { return make_laplacian(graph, cfg.laplacian); });
  auto kernel = staged("kernel", [&] { return kernel_matrix(training, cfg.kernel); });
  auto system = staged("assemble", [&] {
    return assemble_system(kernel, laplacian.matrix, training.labels(), cfg.gamma);
  });
  return {std::move(training), std::move(graph), std::move(laplacian), std::move(kernel),
          std::move(system)};
}

ClassicalStage run_classical(const RunConfig& cfg, const Problem& problem) {
  return staged("classical", [&] {
    ClassicalStage out{solve_classical(problem.system, cfg.sigma_thresh, cfg.kernel,
                                       problem.training.features()),
                       0.0, 0.0, 0.0, matrix_checksum(problem.system.a_hat())};
    const auto& k = problem.kernel;
    const auto& l = problem.laplacian.matrix;
    const Eigen::VectorXd& y = problem.training.labels();
    const Eigen::VectorXd& a = out.model.alpha;
    const Eigen::VectorXd ky = k * y;
    out.residual = (problem.system.a_matrix * a - ky).norm() / ky.norm();
    // d/da of the matrix-form objective, written out term by term.
    const Eigen::VectorXd grad =
        -cfg.gamma * ky + cfg.gamma * k * (k * a) + k * a + k * (l * (k * a));
    out.gradient_norm = grad.norm();
    out.objective = training_objective(a, k, l, y, cfg.gamma);
    return out;
  });
}

QuantumStage run_quantum(const RunConfig& cfg, const Problem& problem,
                         const ClassicalStage& classical) {
  QuantumStage out;
  const QPEConfig qpe{cfg.clock_qubits, 0.0, EvolutionBackend::kExact};
  const auto dens = staged("encode", [&] { return problem_densities(cfg, problem); });
  const auto y = staged("encode", [&] { return label_state(problem.training.labels()); });

  const auto ky = staged("multiply", [&] { return quantum_multiply(dens.k, y, qpe); });
  const Eigen::VectorXd ky_direct = problem.kernel * problem.training.labels();
  out.multiply_fidelity = fidelity(ky.solution_state, StateVector::from_real(ky_direct));
  out.multiply_success_probability = ky.success_probability;

  const Eigen::MatrixXd a_hat = problem.system.a_hat();
  out.a_hat_checksum = matrix_checksum(a_hat);
  const auto hhl = staged("invert", [&] {
    return hhl_solve(ComplexMatrix::from_real(a_hat), ky.solution_state, cfg.sigma_thresh, qpe);
  });
  out.fidelity = fidelity(hhl.solution_state, StateVector::from_real(classical.model.alpha));
  out.hhl_success_probability = hhl.success_probability;
  out.evolution_time = hhl.evolution_time;
  out.retained_eigenvalues = hhl.retained_eigenvalues;
  out.alpha = hhl.solution_state.amplitudes().real();
  out.alpha /= out.alpha.norm();

  if (uses_encodings(cfg)) {
    out.density_route_deviation = staged("program-state", [&] {
      const double tk = problem.kernel.trace();
      const double tl = problem.laplacian.matrix.trace();
      const auto joint = mix_program_states(
          {{make_program_state_k(dens.k), tk / cfg.gamma},
           {make_program_state_kk(dens.k), tk * tk},
           {make_program_state_klk(dens.k, dens.l), tk * tk * tl / cfg.gamma}});
      const Eigen::MatrixXd routed =
          joint.scale() * joint.generator().data().real() / problem.system.trace_a;
      return (routed - a_hat).norm();
    });
  }
  return out;
}

double log_log_slope(const std::vector<double>& dts, const std::vector<double>& errors) {
  require(dts.size() >= 3, ErrorKind::kParameter, "slope fit needs at least three step sizes");
  require(dts.size() == errors.size(), ErrorKind::kLayout, "step and error lists differ in length");
  const auto n = static_cast<Eigen::Index>(dts.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    require(dts[i] > 0.0, ErrorKind::kParameter, "step sizes must be positive");
    require(errors[i] > 0.0, ErrorKind::kDegenerate, "channel error vanished at dt = " +
                                                         std::to_string(dts[i]));
    design(i, 0) = std::log(dts[i]);
    design(i, 1) = 1.0;
    rhs(i) = std::log(errors[i]);
  }
  require((design.col(0).array() - design(0, 0)).abs().maxCoeff() > 0.0, ErrorKind::kParameter,
          "step sizes must not all be equal");
  return design.colPivHouseholderQr().solve(rhs)(0);
}

LmrBench bench_lmr(const RunConfig& cfg, const Problem& problem, const std::vector<double>& dts,
                   double total_time) {
  require(dts.size() >= 3, ErrorKind::kParameter, "bench needs at least three step sizes");
  for (double dt : dts) require(dt > 0.0, ErrorKind::kParameter, "step sizes must be positive");
  LmrBench out{dts, total_time, cfg.delta, {}};
  const auto dens = staged("encode", [&] { return problem_densities(cfg, problem); });
  const auto sigma0 = DensityMatrix::pure(label_state(problem.training.labels()));
  const std::vector<std::pair<std::string, ProgramState>> terms{
      {"K", make_program_state_k(dens.k)},
      {"KK", make_program_state_kk(dens.k)},
      {"KLK", make_program_state_klk(dens.k, dens.l)}};
  for (const auto& [name, ps] : terms) {
    staged("bench " + name, [&] {
      LmrTerm term;
      term.name = name;
      const auto b = ps.generator();
      for (double dt : dts) {
        const auto step = glmr_step(ps, sigma0, dt);
        const auto exact = exact_evolution(b, sigma0, dt);
        term.single_step_errors.push_back(frobenius_distance(step.matrix(), exact.matrix()));
      }
      term.slope = log_log_slope(dts, term.single_step_errors);
      const auto exact = exact_evolution(b, sigma0, total_time);
      EvolutionConfig ecfg{total_time, cfg.delta, 0};
      term.steps = ecfg.resolved_steps();
      term.trajectory_error = frobenius_distance(
          simulate_evolution({{ps, 1.0}}, sigma0, ecfg).state.matrix(), exact.matrix());
      ecfg.steps = 2 * term.steps;
      term.trajectory_error_doubled = frobenius_distance(
          simulate_evolution({{ps, 1.0}}, sigma0, ecfg).state.matrix(), exact.matrix());
      term.halving_ratio = term.trajectory_error / term.trajectory_error_doubled;
      out.terms.push_back(std::move(term));
    });
  }
  return out;
}

Eigen::MatrixXd load_queries(const std::optional<std::filesystem::path>& testset,
                             const TrainingSet& training) {
  if (!testset) return training.features();
  auto table = staged("testset", [&] { return load_feature_table_file(*testset); });
  require(static_cast<std::size_t>(table.features.cols()) == training.dimension(),
          ErrorKind::kLayout,
          "testset: " + std::to_string(table.features.cols()) + " features, training set has " +
              std::to_string(training.dimension()));
  return std::move(table.features);
}

RunReport run_train(const RunConfig& cfg, TrainingSet training, const Eigen::MatrixXd& queries) {
  RunReport report;
  report.command = "train";
  report.config = cfg;
  StageClock clock(report.timings);
  const auto problem = prepare_problem(cfg, std::move(training));
  clock.lap("prepare");
  report.dataset = summarize(problem);
  report.classical = run_classical(cfg, problem);
  clock.lap("classical");
  const Eigen::MatrixXd& q = queries.size() > 0 ? queries : problem.training.features();
  report.predictions = classical_predictions(report.classical->model, q);
  clock.lap("predict");
  if (!cfg.include_timings) report.timings.clear();
  return report;
}

RunReport run_pipeline(const RunConfig& cfg, TrainingSet training, const Eigen::MatrixXd& queries) {
  RunReport report;
  report.command = "simulate";
  report.config = cfg;
  StageClock clock(report.timings);
  const auto problem = prepare_problem(cfg, std::move(training));
  clock.lap("prepare");
  report.dataset = summarize(problem);
  report.classical = run_classical(cfg, problem);
  clock.lap("classical");
  report.quantum = run_quantum(cfg, problem, *report.classical);
  clock.lap("quantum");
  require(report.quantum->a_hat_checksum == report.classical->a_hat_checksum,
          ErrorKind::kConfig, "classical and quantum paths saw different A_hat matrices");

  const Eigen::MatrixXd& q = queries.size() > 0 ? queries : problem.training.features();
  report.predictions = classical_predictions(report.classical->model, q);
  std::size_t agree = 0;
  staged("classify", [&] {
    for (std::size_t i = 0; i < report.predictions.size(); ++i) {
      auto& rec = report.predictions[i];
      const auto c = classify(report.quantum->alpha, rec.point, problem.training, cfg.shots,
                              cfg.seed + i);
      rec.quantum_label = c.label;
      rec.p_estimate = c.p_estimate;
      rec.ambiguous = c.ambiguous;
      if (c.label == rec.classical_label) ++agree;
    }
  });
  report.prediction_agreement =
      report.predictions.empty()
          ? 1.0
          : static_cast<double>(agree) / static_cast<double>(report.predictions.size());
  clock.lap("classify");

  report.lmr = bench_lmr(cfg, problem);
  clock.lap("lmr");
  if (!cfg.include_timings) report.timings.clear();
  return report;
}

RunReport run_pipeline(const RunConfig& cfg, const std::filesystem::path& dataset,
                       const std::optional<std::filesystem::path>& testset) {
  auto training = staged("dataset", [&] { return load_dataset_file(dataset); });
  const auto queries = load_queries(testset, training);
  return run_pipeline(cfg, std::move(training), queries);
}

RunReport run_bench(const RunConfig& cfg, TrainingSet training, const std::vector<double>& dts) {
  RunReport report;
  report.command = "bench";
  report.config = cfg;
  StageClock clock(report.timings);
  const auto problem = prepare_problem(cfg, std::move(training));
  clock.lap("prepare");
  report.dataset = summarize(problem);
  report.lmr = bench_lmr(cfg, problem, dts);
  clock.lap("lmr");
  if (!cfg.include_timings) report.timings.clear();
  return report;
}

void CostModelParams::validate() const {
  require(m >= 1 && p >= 1, ErrorKind::kParameter, "m and p must be at least 1");
  require(q >= 1 && q <= m, ErrorKind::kParameter,
          "rank q = " + std::to_string(q) + " must lie in [1, m = " + std::to_string(m) + "]");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::kParameter, "epsilon must lie in (0, 1)");
  require(eta > 0.0 && std::isfinite(eta), ErrorKind::kParameter, "eta must be positive");
  require(delta_fail > 0.0 && delta_fail <= 1.0, ErrorKind::kParameter,
          "delta_fail must lie in (0, 1]");
}

CostModelResult cost_model(const CostModelParams& params) {
  params.validate();
  const double q = static_cast<double>(params.q);
  const double m = static_cast<double>(params.m);
  const double log_mp = std::log(m * static_cast<double>(params.p));
  const double log_delta = std::log(1.0 / params.delta_fail);
  CostModelResult out;
  out.quantum_cost = std::pow(q, kQuantumRankExponent) * std::pow(params.epsilon, -3.0) * log_mp;
  out.dequantized_cost = std::pow(q, kDequantizedRankExponent) *
                         std::pow(params.epsilon, -6.0) * std::pow(params.eta, 6.0) *
                         log_delta * log_delta * log_delta;
  if (params.q == params.m)
    out.regime = "full_rank";
  else if (params.q == 1)
    out.regime = "constant_rank";
  else
    out.regime = "slow_growth";
  const double log_m_q = params.m > 1 ? std::log(q) / std::log(m) : 0.0;
  out.quantum_m_exponent = kQuantumRankExponent * log_m_q;
  out.dequantized_m_exponent = kDequantizedRankExponent * log_m_q;
  return out;
}

std::string matrix_checksum(const Eigen::MatrixXd& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()),
                                 static_cast<std::uint64_t>(m.cols())};
  mix(dims, sizeof dims);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double v = m(r, c) == 0.0 ? 0.0 : m(r, c);  // fold -0 into +0
      mix(&v, sizeof v);
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json report_to_json(const RunReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = r.command;

  const auto& c = r.config;
  json cfg;
  cfg["gamma"] = c.gamma;
  cfg["kernel"] = c.kernel.to_string();
  if (c.graph_file)
    cfg["graph"] = {{"file", c.graph_file->string()}};
  else
    cfg["graph"] = {{"knn", c.knn}};
  cfg["laplacian"] = laplacian_name(c.laplacian);
  cfg["sigma_thresh"] = c.sigma_thresh;
  cfg["clock_qubits"] = c.clock_qubits;
  cfg["delta"] = c.delta;
  cfg["shots"] = c.shots;
  cfg["seed"] = c.seed;
  j["config"] = std::move(cfg);

  j["dataset"] = {{"samples", r.dataset.samples},
                  {"features", r.dataset.features},
                  {"labeled", r.dataset.labeled},
                  {"graph_edges", r.dataset.graph_edges}};

  if (r.classical) {
    const auto& cl = *r.classical;
    j["classical_alpha"] = vector_json(cl.model.alpha);
    j["classical"] = {{"residual", cl.residual},
                      {"gradient_norm", cl.gradient_norm},
                      {"objective", cl.objective},
                      {"retained_eigenvalues", cl.model.retained_eigenvalues},
                      {"a_hat_checksum", cl.a_hat_checksum}};
  }
  if (r.quantum) {
    const auto& q = *r.quantum;
    j["quantum_fidelity"] = q.fidelity;
    j["hhl_success_probability"] = q.hhl_success_probability;
    json qj;
    qj["alpha"] = vector_json(q.alpha);
    qj["multiply_fidelity"] = q.multiply_fidelity;
    qj["multiply_success_probability"] = q.multiply_success_probability;
    qj["evolution_time"] = q.evolution_time;
    qj["retained_eigenvalues"] = q.retained_eigenvalues;
    qj["a_hat_checksum"] = q.a_hat_checksum;
    qj["density_route_deviation"] =
        q.density_route_deviation ? json(*q.density_route_deviation) : json(nullptr);
    j["quantum"] = std::move(qj);
  }
  if (r.prediction_agreement) j["prediction_agreement"] = *r.prediction_agreement;
  if (!r.predictions.empty() || r.classical) {
    json preds = json::array();
    for (const auto& p : r.predictions) {
      json pj;
      pj["point"] = vector_json(p.point);
      pj["classical_score"] = p.classical_score;
      pj["classical_label"] = p.classical_label;
      if (p.quantum_label) {
        pj["quantum_label"] = *p.quantum_label;
        pj["p_estimate"] = *p.p_estimate;
        pj["ambiguous"] = p.ambiguous;
      }
      preds.push_back(std::move(pj));
    }
    j["predictions"] = std::move(preds);
  }
  if (r.lmr) {
    json slopes;
    json terms = json::array();
    for (const auto& t : r.lmr->terms) {
      slopes[t.name] = t.slope;
      terms.push_back({{"name", t.name},
                       {"single_step_errors", t.single_step_errors},
                       {"slope", t.slope},
                       {"steps", t.steps},
                       {"trajectory_error", t.trajectory_error},
                       {"trajectory_error_doubled", t.trajectory_error_doubled},
                       {"halving_ratio", t.halving_ratio}});
    }
    j["lmr_slopes"] = std::move(slopes);
    j["lmr"] = {{"dts", r.lmr->dts},
                {"total_time", r.lmr->total_time},
                {"delta", r.lmr->delta},
                {"terms", std::move(terms)}};
  }
  if (!r.timings.empty()) {
    json t;
    for (const auto& [stage, ms] : r.timings) t[stage] = ms;
    j["timings"] = std::move(t);
  }
  return j;
}

json cost_model_to_json(const CostModelParams& p, const CostModelResult& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = "costmodel";
  j["params"] = {{"m", p.m}, {"p", p.p},     {"q", p.q},
                 {"epsilon", p.epsilon}, {"eta", p.eta}, {"delta_fail", p.delta_fail}};
  j["quantum_cost"] = r.quantum_cost;
  j["dequantized_cost"] = r.dequantized_cost;
  j["regime"] = r.regime;
  j["rank_exponents"] = {{"quantum", kQuantumRankExponent},
                         {"dequantized", kDequantizedRankExponent}};
  j["m_exponents"] = {{"quantum", r.quantum_m_exponent},
                      {"dequantized", r.dequantized_m_exponent}};
  return j;
}

void emit_report(const json& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorKind::kIo, "cannot open report " + path.string() + ": " + std::strerror(errno));
  out << report.dump(2) << '\n';
  out.flush();
  if (!out) fail(ErrorKind::kIo, "failed writing report " + path.string());
}

}  // namespace qssvm
