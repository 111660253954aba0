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

#include "qssvm/dataset_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qssvm/error.hpp"

namespace qssvm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

char detect_delimiter(std::string_view header) {
  for (char c : {',', '\t', ';'})
    if (header.find(c) != std::string_view::npos) return c;
  return ',';
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view token, std::size_t line) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(value))
    parse_fail(line, "not a number: '" + std::string(token) + "'");
  return value;
}

}  // namespace

TrainingSet::TrainingSet(Eigen::MatrixXd features, Eigen::VectorXd labels,
                         std::vector<std::size_t> source_rows)
    : features_(std::move(features)), labels_(std::move(labels)),
      source_rows_(std::move(source_rows)) {
  const auto m = static_cast<std::size_t>(features_.rows());
  require(m >= 1, ErrorKind::kParse, "training set is empty");
  require(features_.cols() >= 1, ErrorKind::kParse, "training set has no feature columns");
  require(static_cast<std::size_t>(labels_.size()) == m, ErrorKind::kParse,
          "label count does not match sample count");
  require(features_.allFinite(), ErrorKind::kParse, "features must be finite");
  if (source_rows_.empty()) {
    source_rows_.resize(m);
    std::iota(source_rows_.begin(), source_rows_.end(), std::size_t{0});
  }
  require(source_rows_.size() == m, ErrorKind::kParse, "source row map has wrong length");

  while (labeled_count_ < m && labels_(static_cast<Eigen::Index>(labeled_count_)) != 0.0) {
    const double y = labels_(static_cast<Eigen::Index>(labeled_count_));
    require(y == 1.0 || y == -1.0, ErrorKind::kParse, "labels must be -1, 0 or +1");
    ++labeled_count_;
  }
  require(labeled_count_ >= 1, ErrorKind::kParse, "training set has no labeled sample");
  for (std::size_t i = labeled_count_; i < m; ++i)
    require(labels_(static_cast<Eigen::Index>(i)) == 0.0, ErrorKind::kParse,
            "labeled samples must precede unlabeled ones");
}

TrainingSet TrainingSet::from_table(const FeatureTable& table) {
  const auto m = static_cast<std::size_t>(table.features.rows());
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
    return table.labels(static_cast<Eigen::Index>(i)) != 0.0;
  });
  Eigen::MatrixXd features(table.features.rows(), table.features.cols());
  Eigen::VectorXd labels(table.labels.size());
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    features.row(static_cast<Eigen::Index>(i)) = table.features.row(src);
    labels(static_cast<Eigen::Index>(i)) = table.labels(src);
  }
  return TrainingSet(std::move(features), std::move(labels), std::move(order));
}

FeatureTable load_feature_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (!body.empty() && body.front() != '#') {
      header = line;
      break;
    }
  }
  if (header.empty()) parse_fail(line_no == 0 ? 1 : line_no, "missing header row");
  const char delim = detect_delimiter(header);
  const auto names = split(trim(header), delim);
  if (names.size() < 2) parse_fail(line_no, "header needs at least one feature and a label column");

  FeatureTable table;
  for (std::size_t c = 0; c + 1 < names.size(); ++c) table.feature_names.emplace_back(names[c]);
  const std::size_t p = names.size() - 1;

  std::vector<double> values;
  std::vector<double> labels;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cells = split(body, delim);
    if (cells.size() != names.size())
      parse_fail(line_no, "expected " + std::to_string(names.size()) + " columns, found " +
                              std::to_string(cells.size()));
    for (std::size_t c = 0; c < p; ++c) values.push_back(parse_number(cells[c], line_no));
    const double y = parse_number(cells[p], line_no);
    if (y != -1.0 && y != 0.0 && y != 1.0)
      parse_fail(line_no, "label must be -1, 0 or +1, got '" + std::string(cells[p]) + "'");
    labels.push_back(y);
  }
  if (labels.empty()) parse_fail(line_no, "no data rows");

  const auto m = static_cast<Eigen::Index>(labels.size());
  table.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                  Eigen::RowMajor>>(values.data(), m,
                                                                    static_cast<Eigen::Index>(p));
  table.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(), m);
  return table;
}

TrainingSet load_dataset(std::istream& in) {
  return TrainingSet::from_table(load_feature_table(in));
}

FeatureTable load_feature_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  return load_feature_table(in);
}

TrainingSet load_dataset_file(const std::filesystem::path& path) {
  return TrainingSet::from_table(load_feature_table_file(path));
}

SampleGraph::SampleGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), degrees_(vertex_count, 0) {
  require(vertex_count >= 1, ErrorKind::kParameter, "graph needs at least one vertex");
  for (auto& [i, j] : edges) {
    require(i < vertex_count && j < vertex_count, ErrorKind::kParameter,
            "edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    require(i != j, ErrorKind::kParameter, "self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    ++degrees_[i];
    ++degrees_[j];
  }
}

bool SampleGraph::has_isolated_vertex() const {
  return std::find(degrees_.begin(), degrees_.end(), std::size_t{0}) != degrees_.end();
}

void SampleGraph::require_no_isolated_vertices() const {
  const auto it = std::find(degrees_.begin(), degrees_.end(), std::size_t{0});
  require(it == degrees_.end(), ErrorKind::kDegree,
          "vertex " + std::to_string(it - degrees_.begin()) + " is isolated");
}

SampleGraph build_knn_graph(const TrainingSet& x, std::size_t k) {
  const std::size_t m = x.size();
  require(k >= 1 && k < m, ErrorKind::kParameter,
          "kNN needs 1 <= k < m (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")");
  const auto& f = x.features();
  std::vector<Edge> edges;
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < m; ++i) {
    ranked.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double d2 =
          (f.row(static_cast<Eigen::Index>(i)) - f.row(static_cast<Eigen::Index>(j))).squaredNorm();
      ranked.emplace_back(d2, j);
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    for (std::size_t r = 0; r < k; ++r) edges.emplace_back(i, ranked[r].second);
  }
  return SampleGraph(m, std::move(edges));
}

SampleGraph load_graph(std::istream& in, const TrainingSet& x) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("graph file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("edges") ||
      !doc["m"].is_number_unsigned() || !doc["edges"].is_array())
    fail(ErrorKind::kParse, "graph file must be an object with integer 'm' and array 'edges'");
  const auto m = doc["m"].get<std::size_t>();
  require(m == x.size(), ErrorKind::kParse,
          "graph has " + std::to_string(m) + " vertices but dataset has " +
              std::to_string(x.size()) + " samples");

  std::vector<std::size_t> sample_of_row(m);
  for (std::size_t i = 0; i < m; ++i) sample_of_row[x.source_rows()[i]] = i;

  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned())
      fail(ErrorKind::kParse, "each edge must be a pair of non-negative integers");
    const auto a = e[0].get<std::size_t>();
    const auto b = e[1].get<std::size_t>();
    require(a < m && b < m, ErrorKind::kParse, "edge vertex out of range");
    edges.emplace_back(sample_of_row[a], sample_of_row[b]);
  }
  try {
    return SampleGraph(m, std::move(edges));
  } catch (const Error& e) {
    fail(ErrorKind::kParse, std::string("graph file: ") + e.what());
  }
}

SampleGraph load_graph_file(const std::filesystem::path& path, const TrainingSet& x) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  return load_graph(in, x);
}

Eigen::MatrixXd incidence_matrix(const SampleGraph& g) {
  g.require_no_isolated_vertices();
  const auto& deg = g.degrees();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.vertex_count()),
                                              static_cast<Eigen::Index>(g.edge_count()));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [i, j] = g.edges()[e];
    const auto col = static_cast<Eigen::Index>(e);
    out(static_cast<Eigen::Index>(i), col) = -1.0 / std::sqrt(static_cast<double>(deg[i]));
    out(static_cast<Eigen::Index>(j), col) = 1.0 / std::sqrt(static_cast<double>(deg[j]));
  }
  return out;
}

LaplacianMatrix combinatorial_laplacian(const SampleGraph& g) {
  const auto m = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (const auto& [i, j] : g.edges()) {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    l(a, b) -= 1.0;
    l(b, a) -= 1.0;
    l(a, a) += 1.0;
    l(b, b) += 1.0;
  }
  return {std::move(l), LaplacianKind::kCombinatorial};
}

LaplacianMatrix normalized_laplacian(const SampleGraph& g) {
  g.require_no_isolated_vertices();
  const auto m = static_cast<Eigen::Index>(g.vertex_count());
  const auto& deg = g.degrees();
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(m, m);
  for (const auto& [i, j] : g.edges()) {
    const double w = -1.0 / std::sqrt(static_cast<double>(deg[i] * deg[j]));
    l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
    l(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
  }
  return {std::move(l), LaplacianKind::kNormalized};
}

LaplacianMatrix make_laplacian(const SampleGraph& g, LaplacianKind kind) {
  return kind == LaplacianKind::kNormalized ? normalized_laplacian(g) : combinatorial_laplacian(g);
}

}  // namespace qssvm
