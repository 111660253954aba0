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

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "qssvm/dataset_graph.hpp"
#include "qssvm/density_encoding.hpp"

namespace qssvm {

/// (1/sqrt m) sum_j |j> (x) x_new/|x_new| over the layout {m, p}.
StateVector query_state(const Eigen::VectorXd& x_new, const TrainingSet& training);

/// sum_j alpha_j |j> (x) x_j, normalized.
StateVector expansion_state(const Eigen::VectorXd& alpha, const TrainingSet& training);

struct OverlapEstimate {
  /// Probability of the |1> ancilla outcome, or its empirical frequency.
  double probability;
  std::size_t shots;
  /// Re <psi|phi>
  double exact_overlap;
};

/// Ancilla (|0>|psi> + |1>|phi>)/sqrt 2 followed by a Hadamard on the ancilla.
/// shots = 0 returns (1 - Re<psi|phi>)/2; otherwise the frequency of the |1>
/// outcome over `shots` seeded draws.
OverlapEstimate overlap_probability(const StateVector& psi, const StateVector& phi,
                                    std::size_t shots, std::uint64_t seed);

struct Classification {
  int label;
  double p_estimate;
  /// Sampled mode only: the estimate sits within `ambiguity_sigmas` binomial
  /// standard deviations of 1/2.
  bool ambiguous;
};

inline constexpr double kDefaultAmbiguitySigmas = 3.0;

/// +1 when the estimate is below 1/2, -1 otherwise; sign(0) goes to +1.
Classification classify(const Eigen::VectorXd& alpha, const Eigen::VectorXd& x_new,
                        const TrainingSet& training, std::size_t shots, std::uint64_t seed,
                        double ambiguity_sigmas = kDefaultAmbiguitySigmas);

}  // namespace qssvm
