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
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qssvm {

/// Rows of a delimiter-separated table: features plus the trailing label column.
struct FeatureTable {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
};

/// m samples of dimension p. Labeled samples (+1/-1) come first, followed by
/// unlabeled ones (label 0).
class TrainingSet {
 public:
  /// Validates the labeled-first ordering; `source_rows[i]` is the row of the
  /// input file that became sample i (defaults to the identity).
  TrainingSet(Eigen::MatrixXd features, Eigen::VectorXd labels,
              std::vector<std::size_t> source_rows = {});

  /// Reorders rows so that labeled samples precede unlabeled ones while
  /// keeping the relative order within each group.
  static TrainingSet from_table(const FeatureTable& table);

  std::size_t size() const { return static_cast<std::size_t>(features_.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(features_.cols()); }
  std::size_t labeled_count() const { return labeled_count_; }

  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  const std::vector<std::size_t>& source_rows() const { return source_rows_; }

 private:
  Eigen::MatrixXd features_;
  Eigen::VectorXd labels_;
  std::size_t labeled_count_ = 0;
  std::vector<std::size_t> source_rows_;
};

FeatureTable load_feature_table(std::istream& in);
TrainingSet load_dataset(std::istream& in);
TrainingSet load_dataset_file(const std::filesystem::path& path);
FeatureTable load_feature_table_file(const std::filesystem::path& path);

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected unit-weight graph over the samples. Edges are stored as (i, j)
/// with i < j, deduplicated and sorted lexicographically.
class SampleGraph {
 public:
  SampleGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& degrees() const { return degrees_; }

  bool has_isolated_vertex() const;
  /// Throws a degree error naming the first isolated vertex.
  void require_no_isolated_vertices() const;

 private:
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
};

/// Union of each vertex's k nearest neighbours under Euclidean distance;
/// equal distances are resolved toward the lower index.
SampleGraph build_knn_graph(const TrainingSet& x, std::size_t k);

/// Reads `{ "m": int, "edges": [[i, j], ...] }`. Vertex ids refer to data rows
/// of the dataset file and are remapped through `x.source_rows()`.
SampleGraph load_graph(std::istream& in, const TrainingSet& x);
SampleGraph load_graph_file(const std::filesystem::path& path, const TrainingSet& x);

/// m x n matrix with entries -1/sqrt(d_i) and +1/sqrt(d_j) for edge (i, j).
Eigen::MatrixXd incidence_matrix(const SampleGraph& g);

enum class LaplacianKind { kCombinatorial, kNormalized };

struct LaplacianMatrix {
  Eigen::MatrixXd matrix;
  LaplacianKind kind;
};

LaplacianMatrix combinatorial_laplacian(const SampleGraph& g);
LaplacianMatrix normalized_laplacian(const SampleGraph& g);
LaplacianMatrix make_laplacian(const SampleGraph& g, LaplacianKind kind);

}  // namespace qssvm
