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

#ifndef QSSVM_QSSVM_H_
#define QSSVM_QSSVM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QSSVM_BUILDING_LIBRARY)
#    define QSSVM_API __declspec(dllexport)
#  else
#    define QSSVM_API __declspec(dllimport)
#  endif
#else
#  define QSSVM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qssvm_status {
  QSSVM_OK = 0,
  QSSVM_ERR_SIZE = 1,
  QSSVM_ERR_LAYOUT = 2,
  QSSVM_ERR_SYMMETRY = 3,
  QSSVM_ERR_PARAMETER = 4,
  QSSVM_ERR_PARSE = 5,
  QSSVM_ERR_DEGREE = 6,
  QSSVM_ERR_ENCODING = 7,
  QSSVM_ERR_DEGENERATE = 8,
  QSSVM_ERR_CONFIG = 9,
  QSSVM_ERR_AMPLITUDE_OVERFLOW = 10,
  QSSVM_ERR_IO = 11,
  QSSVM_ERR_NULL_ARGUMENT = 12,
  QSSVM_ERR_INTERNAL = 13
} qssvm_status;

typedef struct qssvm_dataset qssvm_dataset;
typedef struct qssvm_config qssvm_config;
typedef struct qssvm_report qssvm_report;

QSSVM_API const char* qssvm_version(void);
QSSVM_API const char* qssvm_status_name(qssvm_status status);
/* Message of the last failure on the calling thread; empty after success. */
QSSVM_API const char* qssvm_last_error(void);

/* Datasets: CSV/TSV with a header row, features then a label column. */
QSSVM_API qssvm_status qssvm_dataset_load(const char* path, qssvm_dataset** out);
QSSVM_API qssvm_status qssvm_dataset_from_arrays(const double* features, const double* labels,
                                                 size_t rows, size_t cols,
                                                 qssvm_dataset** out);
QSSVM_API size_t qssvm_dataset_samples(const qssvm_dataset* ds);
QSSVM_API size_t qssvm_dataset_features(const qssvm_dataset* ds);
QSSVM_API void qssvm_dataset_free(qssvm_dataset* ds);

QSSVM_API qssvm_status qssvm_config_create(qssvm_config** out);
QSSVM_API void qssvm_config_free(qssvm_config* cfg);
QSSVM_API qssvm_status qssvm_config_set_gamma(qssvm_config* cfg, double gamma);
/* "linear", "poly:d,c" or "rbf:w" */
QSSVM_API qssvm_status qssvm_config_set_kernel(qssvm_config* cfg, const char* spec);
QSSVM_API qssvm_status qssvm_config_set_knn(qssvm_config* cfg, size_t k);
/* NULL clears the file and returns to the kNN graph. */
QSSVM_API qssvm_status qssvm_config_set_graph_file(qssvm_config* cfg, const char* path);
/* "normalized" or "combinatorial" */
QSSVM_API qssvm_status qssvm_config_set_laplacian(qssvm_config* cfg, const char* kind);
QSSVM_API qssvm_status qssvm_config_set_sigma_thresh(qssvm_config* cfg, double sigma);
QSSVM_API qssvm_status qssvm_config_set_clock_qubits(qssvm_config* cfg, size_t clock_qubits);
QSSVM_API qssvm_status qssvm_config_set_delta(qssvm_config* cfg, double delta);
QSSVM_API qssvm_status qssvm_config_set_shots(qssvm_config* cfg, size_t shots);
QSSVM_API qssvm_status qssvm_config_set_seed(qssvm_config* cfg, uint64_t seed);
QSSVM_API qssvm_status qssvm_config_set_timings(qssvm_config* cfg, int enabled);

/* testset may be NULL, in which case the training points are classified. */
QSSVM_API qssvm_status qssvm_train(const qssvm_dataset* train, const qssvm_dataset* testset,
                                   const qssvm_config* cfg, qssvm_report** out);
QSSVM_API qssvm_status qssvm_simulate(const qssvm_dataset* train, const qssvm_dataset* testset,
                                      const qssvm_config* cfg, qssvm_report** out);
/* dts may be NULL (n_dts = 0) for the default sweep. */
QSSVM_API qssvm_status qssvm_bench(const qssvm_dataset* train, const qssvm_config* cfg,
                                   const double* dts, size_t n_dts, qssvm_report** out);
QSSVM_API qssvm_status qssvm_costmodel(size_t m, size_t p, size_t q, double epsilon, double eta,
                                       double delta_fail, qssvm_report** out);

/* The returned string lives as long as the report. */
QSSVM_API const char* qssvm_report_json(const qssvm_report* report);
/* Looks up a top-level numeric field such as "quantum_fidelity". */
QSSVM_API qssvm_status qssvm_report_number(const qssvm_report* report, const char* key,
                                           double* value);
QSSVM_API qssvm_status qssvm_report_write(const qssvm_report* report, const char* path);
QSSVM_API void qssvm_report_free(qssvm_report* report);

#ifdef __cplusplus
}
#endif

#endif  /* QSSVM_QSSVM_H_ */
