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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qssvm/qssvm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int exit_code(qssvm_status s) {
  switch (s) {
    case QSSVM_OK:
      return kExitOk;
    case QSSVM_ERR_IO:
      return kExitIo;
    case QSSVM_ERR_DEGENERATE:
    case QSSVM_ERR_SYMMETRY:
    case QSSVM_ERR_AMPLITUDE_OVERFLOW:
    case QSSVM_ERR_SIZE:
    case QSSVM_ERR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

// Thrown out of a subcommand with the status that ended it.
struct Failure {
  qssvm_status status;
};

void check(qssvm_status s) {
  if (s != QSSVM_OK) throw Failure{s};
}

struct Options {
  std::string dataset;
  std::string testset;
  std::string report;
  double gamma = 1.0;
  std::string kernel = "linear";
  std::size_t knn = 3;
  std::string graph;
  double sigma_thresh = 0.05;
  std::size_t clock_qubits = 8;
  double delta = 1e-3;
  std::size_t shots = 0;
  std::uint64_t seed = 42;
  std::string laplacian = "normalized";
  bool timings = false;
  std::vector<double> dts;

  std::size_t m = 0, p = 1, q = 1;
  double epsilon = 0.1;
  double eta = 1.0;
  double delta_fail = 0.36787944117144233;
};

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("dataset", o.dataset, "training CSV (features..., label)")->required();
  cmd->add_option("--gamma", o.gamma, "regularization weight")->capture_default_str();
  cmd->add_option("--kernel", o.kernel, "linear | poly:d,c | rbf:w")->capture_default_str();
  auto* knn = cmd->add_option("--knn", o.knn, "neighbours in the kNN graph")->capture_default_str();
  auto* graph = cmd->add_option("--graph", o.graph, "JSON graph file {m, edges}");
  knn->excludes(graph);
  cmd->add_option("--laplacian", o.laplacian, "normalized | combinatorial")
      ->check(CLI::IsMember({"normalized", "combinatorial"}))
      ->capture_default_str();
  cmd->add_option("--sigma-thresh", o.sigma_thresh, "eigenvalue filter")->capture_default_str();
  cmd->add_option("--clock-qubits", o.clock_qubits, "phase-estimation register size")
      ->capture_default_str();
  cmd->add_option("--delta", o.delta, "LMR error budget")->capture_default_str();
  cmd->add_option("--shots", o.shots, "swap-test shots (0 = analytic)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--report", o.report, "write the JSON report here instead of stdout");
  cmd->add_flag("--timings", o.timings, "include wall-clock stage timings");
}

qssvm_config* make_config(const Options& o) {
  qssvm_config* cfg = nullptr;
  check(qssvm_config_create(&cfg));
  auto guard = [&](qssvm_status s) {
    if (s != QSSVM_OK) {
      qssvm_config_free(cfg);
      throw Failure{s};
    }
  };
  guard(qssvm_config_set_gamma(cfg, o.gamma));
  guard(qssvm_config_set_kernel(cfg, o.kernel.c_str()));
  guard(qssvm_config_set_knn(cfg, o.knn));
  if (!o.graph.empty()) guard(qssvm_config_set_graph_file(cfg, o.graph.c_str()));
  guard(qssvm_config_set_laplacian(cfg, o.laplacian.c_str()));
  guard(qssvm_config_set_sigma_thresh(cfg, o.sigma_thresh));
  guard(qssvm_config_set_clock_qubits(cfg, o.clock_qubits));
  guard(qssvm_config_set_delta(cfg, o.delta));
  guard(qssvm_config_set_shots(cfg, o.shots));
  guard(qssvm_config_set_seed(cfg, o.seed));
  guard(qssvm_config_set_timings(cfg, o.timings ? 1 : 0));
  return cfg;
}

void deliver(qssvm_report* report, const std::string& path) {
  if (path.empty()) {
    std::cout << qssvm_report_json(report) << '\n';
    return;
  }
  check(qssvm_report_write(report, path.c_str()));
  std::cerr << "report written to " << path << '\n';
}

enum class Command { kTrain, kSimulate, kBench };

int run(Command command, const Options& o) {
  qssvm_dataset* train = nullptr;
  qssvm_dataset* test = nullptr;
  qssvm_config* cfg = nullptr;
  qssvm_report* report = nullptr;
  int code = kExitOk;
  try {
    check(qssvm_dataset_load(o.dataset.c_str(), &train));
    if (!o.testset.empty()) check(qssvm_dataset_load(o.testset.c_str(), &test));
    cfg = make_config(o);
    switch (command) {
      case Command::kTrain:
        check(qssvm_train(train, test, cfg, &report));
        break;
      case Command::kSimulate:
        check(qssvm_simulate(train, test, cfg, &report));
        break;
      case Command::kBench:
        check(qssvm_bench(train, cfg, o.dts.empty() ? nullptr : o.dts.data(), o.dts.size(),
                          &report));
        break;
    }
    deliver(report, o.report);
  } catch (const Failure& f) {
    std::cerr << "error (" << qssvm_status_name(f.status) << "): " << qssvm_last_error() << '\n';
    code = exit_code(f.status);
  }
  qssvm_report_free(report);
  qssvm_config_free(cfg);
  qssvm_dataset_free(test);
  qssvm_dataset_free(train);
  return code;
}

int run_costmodel(const Options& o) {
  qssvm_report* report = nullptr;
  int code = kExitOk;
  try {
    check(qssvm_costmodel(o.m, o.p, o.q, o.epsilon, o.eta, o.delta_fail, &report));
    deliver(report, o.report);
  } catch (const Failure& f) {
    std::cerr << "error (" << qssvm_status_name(f.status) << "): " << qssvm_last_error() << '\n';
    code = exit_code(f.status);
  }
  qssvm_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised LS-SVM with simulated quantum training stages"};
  app.set_version_flag("--version", std::string(qssvm_version()));
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "classical training and prediction");
  add_run_flags(train, o);
  train->add_option("--testset", o.testset, "CSV of points to classify");

  auto* simulate = app.add_subcommand("simulate", "full simulated pipeline with verification");
  add_run_flags(simulate, o);
  simulate->add_option("--testset", o.testset, "CSV of points to classify");

  auto* bench = app.add_subcommand("bench", "LMR channel error scaling");
  add_run_flags(bench, o);
  bench->add_option("--dt", o.dts, "step sizes for the single-step sweep (at least 3)");

  auto* cost = app.add_subcommand("costmodel", "quantum vs dequantized cost model");
  cost->add_option("--m", o.m, "samples")->required();
  cost->add_option("--p", o.p, "features")->capture_default_str();
  cost->add_option("--q", o.q, "rank")->capture_default_str();
  cost->add_option("--epsilon", o.epsilon, "target error")->capture_default_str();
  cost->add_option("--eta", o.eta, "dequantized eta")->capture_default_str();
  cost->add_option("--delta-fail", o.delta_fail, "dequantized failure probability")
      ->capture_default_str();
  cost->add_option("--report", o.report, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*train) return run(Command::kTrain, o);
  if (*simulate) return run(Command::kSimulate, o);
  if (*bench) return run(Command::kBench, o);
  return run_costmodel(o);
}
