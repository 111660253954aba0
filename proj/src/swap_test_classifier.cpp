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

#include "qssvm/swap_test_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qssvm/error.hpp"

namespace qssvm {

using Index = Eigen::Index;

StateVector query_state(const Eigen::VectorXd& x_new, const TrainingSet& training) {
  const auto p = training.dimension();
  require(static_cast<std::size_t>(x_new.size()) == p, ErrorKind::kLayout,
          "query has " + std::to_string(x_new.size()) + " features, training has " +
              std::to_string(p));
  const double norm = x_new.norm();
  require(norm > 0.0, ErrorKind::kEncoding, "query point is the zero vector");
  const auto m = training.size();
  VectorXc amp(static_cast<Index>(m * p));
  for (std::size_t j = 0; j < m; ++j)
    amp.segment(static_cast<Index>(j * p), static_cast<Index>(p)) = x_new.cast<Complex>();
  return StateVector::normalized(std::move(amp), TensorLayout{m, p});
}

StateVector expansion_state(const Eigen::VectorXd& alpha, const TrainingSet& training) {
  const auto m = training.size();
  const auto p = training.dimension();
  require(static_cast<std::size_t>(alpha.size()) == m, ErrorKind::kLayout,
          "alpha has " + std::to_string(alpha.size()) + " entries for " + std::to_string(m) +
              " samples");
  require(alpha.cwiseAbs().maxCoeff() > 0.0, ErrorKind::kDegenerate, "alpha is zero");
  VectorXc amp(static_cast<Index>(m * p));
  for (std::size_t j = 0; j < m; ++j) {
    const Eigen::VectorXd row = training.features().row(static_cast<Index>(j)).transpose();
    require(row.norm() > 0.0, ErrorKind::kEncoding,
            "training row " + std::to_string(j) + " is the zero vector");
    amp.segment(static_cast<Index>(j * p), static_cast<Index>(p)) =
        (alpha(static_cast<Index>(j)) * row).cast<Complex>();
  }
  require(amp.norm() > 0.0, ErrorKind::kDegenerate, "expansion state vanishes");
  return StateVector::normalized(std::move(amp), TensorLayout{m, p});
}

OverlapEstimate overlap_probability(const StateVector& psi, const StateVector& phi,
                                    std::size_t shots, std::uint64_t seed) {
  require(psi.dimension() == phi.dimension(), ErrorKind::kLayout,
          "swap test on states of dimension " + std::to_string(psi.dimension()) + " and " +
              std::to_string(phi.dimension()));
  // After the Hadamard the ancilla-|1> branch is (|psi> - |phi>)/2.
  const VectorXc minus_branch = 0.5 * (psi.amplitudes() - phi.amplitudes());
  const double p = std::clamp(minus_branch.squaredNorm(), 0.0, 1.0);
  const double overlap = psi.amplitudes().dot(phi.amplitudes()).real();
  if (shots == 0) return {p, 0, overlap};
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::size_t> draws(shots, p);
  return {static_cast<double>(draws(rng)) / static_cast<double>(shots), shots, overlap};
}

Classification classify(const Eigen::VectorXd& alpha, const Eigen::VectorXd& x_new,
                        const TrainingSet& training, std::size_t shots, std::uint64_t seed,
                        double ambiguity_sigmas) {
  const auto est = overlap_probability(expansion_state(alpha, training),
                                       query_state(x_new, training), shots, seed);
  // P < 1/2 exactly when the overlap is positive. The analytic path reads the
  // overlap itself so rounding in P cannot flip a label; ties go to +1.
  const int label = shots == 0 ? (est.exact_overlap < 0.0 ? -1 : 1)
                               : (est.probability <= 0.5 ? 1 : -1);
  bool ambiguous = false;
  if (shots > 0) {
    const double margin = ambiguity_sigmas * 0.5 / std::sqrt(static_cast<double>(shots));
    ambiguous = std::abs(est.probability - 0.5) <= margin;
  }
  return {label, est.probability, ambiguous};
}

}  // namespace qssvm
