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

#include "qssvm/qssvm.h"

#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "qssvm/error.hpp"
#include "qssvm/pipeline.hpp"

struct qssvm_dataset {
  qssvm::FeatureTable table;
};

struct qssvm_config {
  qssvm::RunConfig run;
};

struct qssvm_report {
  nlohmann::ordered_json json;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

qssvm_status status_of(qssvm::ErrorKind kind) {
  using qssvm::ErrorKind;
  switch (kind) {
    case ErrorKind::kSize: return QSSVM_ERR_SIZE;
    case ErrorKind::kLayout: return QSSVM_ERR_LAYOUT;
    case ErrorKind::kSymmetry: return QSSVM_ERR_SYMMETRY;
    case ErrorKind::kParameter: return QSSVM_ERR_PARAMETER;
    case ErrorKind::kParse: return QSSVM_ERR_PARSE;
    case ErrorKind::kDegree: return QSSVM_ERR_DEGREE;
    case ErrorKind::kEncoding: return QSSVM_ERR_ENCODING;
    case ErrorKind::kDegenerate: return QSSVM_ERR_DEGENERATE;
    case ErrorKind::kConfig: return QSSVM_ERR_CONFIG;
    case ErrorKind::kAmplitudeOverflow: return QSSVM_ERR_AMPLITUDE_OVERFLOW;
    case ErrorKind::kIo: return QSSVM_ERR_IO;
  }
  return QSSVM_ERR_INTERNAL;
}

template <class F>
qssvm_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QSSVM_OK;
  } catch (const qssvm::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QSSVM_ERR_SIZE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSSVM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QSSVM_ERR_INTERNAL;
  }
}

qssvm_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return QSSVM_ERR_NULL_ARGUMENT;
}

#define QSSVM_REQUIRE_ARG(p) \
  do {                       \
    if ((p) == nullptr) return null_argument(#p); \
  } while (0)

qssvm_report* wrap(nlohmann::ordered_json j) {
  auto* r = new qssvm_report{std::move(j), {}};
  r->text = r->json.dump(2);
  return r;
}

Eigen::MatrixXd queries_of(const qssvm_dataset* testset, const qssvm::TrainingSet& training) {
  if (testset == nullptr) return training.features();
  qssvm::require(static_cast<std::size_t>(testset->table.features.cols()) ==
                     training.dimension(),
                 qssvm::ErrorKind::kLayout, "testset and training set differ in feature count");
  return testset->table.features;
}

}  // namespace

extern "C" {

const char* qssvm_version(void) { return QSSVM_VERSION; }

const char* qssvm_status_name(qssvm_status status) {
  switch (status) {
    case QSSVM_OK: return "ok";
    case QSSVM_ERR_SIZE: return "size";
    case QSSVM_ERR_LAYOUT: return "layout";
    case QSSVM_ERR_SYMMETRY: return "symmetry";
    case QSSVM_ERR_PARAMETER: return "parameter";
    case QSSVM_ERR_PARSE: return "parse";
    case QSSVM_ERR_DEGREE: return "degree";
    case QSSVM_ERR_ENCODING: return "encoding";
    case QSSVM_ERR_DEGENERATE: return "degenerate";
    case QSSVM_ERR_CONFIG: return "config";
    case QSSVM_ERR_AMPLITUDE_OVERFLOW: return "amplitude-overflow";
    case QSSVM_ERR_IO: return "io";
    case QSSVM_ERR_NULL_ARGUMENT: return "null-argument";
    case QSSVM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qssvm_last_error(void) { return g_last_error.c_str(); }

qssvm_status qssvm_dataset_load(const char* path, qssvm_dataset** out) {
  QSSVM_REQUIRE_ARG(path);
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new qssvm_dataset{qssvm::load_feature_table_file(path)}; });
}

qssvm_status qssvm_dataset_from_arrays(const double* features, const double* labels, size_t rows,
                                       size_t cols, qssvm_dataset** out) {
  QSSVM_REQUIRE_ARG(features);
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    qssvm::require(rows >= 1 && cols >= 1, qssvm::ErrorKind::kSize, "empty feature array");
    qssvm::FeatureTable t;
    for (size_t c = 0; c < cols; ++c) t.feature_names.push_back("x" + std::to_string(c));
    t.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    t.labels = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
    for (size_t r = 0; r < rows; ++r) {
      for (size_t c = 0; c < cols; ++c)
        t.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            features[r * cols + c];
      if (labels != nullptr) t.labels(static_cast<Eigen::Index>(r)) = labels[r];
    }
    *out = new qssvm_dataset{std::move(t)};
  });
}

size_t qssvm_dataset_samples(const qssvm_dataset* ds) {
  return ds == nullptr ? 0 : static_cast<size_t>(ds->table.features.rows());
}

size_t qssvm_dataset_features(const qssvm_dataset* ds) {
  return ds == nullptr ? 0 : static_cast<size_t>(ds->table.features.cols());
}

void qssvm_dataset_free(qssvm_dataset* ds) { delete ds; }

qssvm_status qssvm_config_create(qssvm_config** out) {
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new qssvm_config{}; });
}

void qssvm_config_free(qssvm_config* cfg) { delete cfg; }

qssvm_status qssvm_config_set_gamma(qssvm_config* cfg, double gamma) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    qssvm::require(gamma > 0.0, qssvm::ErrorKind::kParameter, "gamma must be positive");
    cfg->run.gamma = gamma;
  });
}

qssvm_status qssvm_config_set_kernel(qssvm_config* cfg, const char* spec) {
  QSSVM_REQUIRE_ARG(cfg);
  QSSVM_REQUIRE_ARG(spec);
  return guarded([&] { cfg->run.kernel = qssvm::KernelSpec::parse(spec); });
}

qssvm_status qssvm_config_set_knn(qssvm_config* cfg, size_t k) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    qssvm::require(k >= 1, qssvm::ErrorKind::kParameter, "knn must be at least 1");
    cfg->run.knn = k;
  });
}

qssvm_status qssvm_config_set_graph_file(qssvm_config* cfg, const char* path) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    if (path == nullptr)
      cfg->run.graph_file.reset();
    else
      cfg->run.graph_file = std::filesystem::path(path);
  });
}

qssvm_status qssvm_config_set_laplacian(qssvm_config* cfg, const char* kind) {
  QSSVM_REQUIRE_ARG(cfg);
  QSSVM_REQUIRE_ARG(kind);
  return guarded([&] {
    const std::string k(kind);
    if (k == "normalized")
      cfg->run.laplacian = qssvm::LaplacianKind::kNormalized;
    else if (k == "combinatorial")
      cfg->run.laplacian = qssvm::LaplacianKind::kCombinatorial;
    else
      qssvm::fail(qssvm::ErrorKind::kParameter, "unknown laplacian kind '" + k + "'");
  });
}

qssvm_status qssvm_config_set_sigma_thresh(qssvm_config* cfg, double sigma) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    qssvm::require(sigma > 0.0 && sigma < 1.0, qssvm::ErrorKind::kParameter,
                   "sigma_thresh must lie in (0, 1)");
    cfg->run.sigma_thresh = sigma;
  });
}

qssvm_status qssvm_config_set_clock_qubits(qssvm_config* cfg, size_t clock_qubits) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    qssvm::require(clock_qubits >= 2 && clock_qubits <= 12, qssvm::ErrorKind::kParameter,
                   "clock_qubits must lie in [2, 12]");
    cfg->run.clock_qubits = clock_qubits;
  });
}

qssvm_status qssvm_config_set_delta(qssvm_config* cfg, double delta) {
  QSSVM_REQUIRE_ARG(cfg);
  return guarded([&] {
    qssvm::require(delta > 0.0 && delta <= 1.0, qssvm::ErrorKind::kParameter,
                   "delta must lie in (0, 1]");
    cfg->run.delta = delta;
  });
}

qssvm_status qssvm_config_set_shots(qssvm_config* cfg, size_t shots) {
  QSSVM_REQUIRE_ARG(cfg);
  cfg->run.shots = shots;
  g_last_error.clear();
  return QSSVM_OK;
}

qssvm_status qssvm_config_set_seed(qssvm_config* cfg, uint64_t seed) {
  QSSVM_REQUIRE_ARG(cfg);
  cfg->run.seed = seed;
  g_last_error.clear();
  return QSSVM_OK;
}

qssvm_status qssvm_config_set_timings(qssvm_config* cfg, int enabled) {
  QSSVM_REQUIRE_ARG(cfg);
  cfg->run.include_timings = enabled != 0;
  g_last_error.clear();
  return QSSVM_OK;
}

qssvm_status qssvm_train(const qssvm_dataset* train, const qssvm_dataset* testset,
                         const qssvm_config* cfg, qssvm_report** out) {
  QSSVM_REQUIRE_ARG(train);
  QSSVM_REQUIRE_ARG(cfg);
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    auto training = qssvm::TrainingSet::from_table(train->table);
    const auto queries = queries_of(testset, training);
    *out = wrap(qssvm::report_to_json(qssvm::run_train(cfg->run, std::move(training), queries)));
  });
}

qssvm_status qssvm_simulate(const qssvm_dataset* train, const qssvm_dataset* testset,
                            const qssvm_config* cfg, qssvm_report** out) {
  QSSVM_REQUIRE_ARG(train);
  QSSVM_REQUIRE_ARG(cfg);
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    auto training = qssvm::TrainingSet::from_table(train->table);
    const auto queries = queries_of(testset, training);
    *out =
        wrap(qssvm::report_to_json(qssvm::run_pipeline(cfg->run, std::move(training), queries)));
  });
}

qssvm_status qssvm_bench(const qssvm_dataset* train, const qssvm_config* cfg, const double* dts,
                         size_t n_dts, qssvm_report** out) {
  QSSVM_REQUIRE_ARG(train);
  QSSVM_REQUIRE_ARG(cfg);
  QSSVM_REQUIRE_ARG(out);
  if (n_dts > 0) QSSVM_REQUIRE_ARG(dts);
  *out = nullptr;
  return guarded([&] {
    const std::vector<double> steps =
        n_dts == 0 ? qssvm::kDefaultBenchSteps : std::vector<double>(dts, dts + n_dts);
    *out = wrap(qssvm::report_to_json(
        qssvm::run_bench(cfg->run, qssvm::TrainingSet::from_table(train->table), steps)));
  });
}

qssvm_status qssvm_costmodel(size_t m, size_t p, size_t q, double epsilon, double eta,
                             double delta_fail, qssvm_report** out) {
  QSSVM_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    const qssvm::CostModelParams params{m, p, q, epsilon, eta, delta_fail};
    *out = wrap(qssvm::cost_model_to_json(params, qssvm::cost_model(params)));
  });
}

const char* qssvm_report_json(const qssvm_report* report) {
  return report == nullptr ? nullptr : report->text.c_str();
}

qssvm_status qssvm_report_number(const qssvm_report* report, const char* key, double* value) {
  QSSVM_REQUIRE_ARG(report);
  QSSVM_REQUIRE_ARG(key);
  QSSVM_REQUIRE_ARG(value);
  return guarded([&] {
    const auto it = report->json.find(key);
    qssvm::require(it != report->json.end() && it->is_number(), qssvm::ErrorKind::kParameter,
                   std::string("report has no numeric field '") + key + "'");
    *value = it->get<double>();
  });
}

qssvm_status qssvm_report_write(const qssvm_report* report, const char* path) {
  QSSVM_REQUIRE_ARG(report);
  QSSVM_REQUIRE_ARG(path);
  return guarded([&] { qssvm::emit_report(report->json, path); });
}

void qssvm_report_free(qssvm_report* report) { delete report; }

}  // extern "C"
