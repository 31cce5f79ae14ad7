#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace adoge {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class AttributeKind { Categorical, Binary, Continuous };

struct AttributeColumnSpec {
  std::string name;
  AttributeKind kind = AttributeKind::Continuous;
  /// Ordered value set for categorical and binary columns; empty for continuous.
  std::vector<std::string> domain;

  bool operator==(const AttributeColumnSpec&) const = default;
};

/// Column layout shared by every graph of a dataset.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<AttributeColumnSpec> columns);

  const std::vector<AttributeColumnSpec>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  /// Number of attribute vectors after one-hot expansion (degree not included).
  std::size_t expanded_size() const noexcept;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<AttributeColumnSpec> columns_;
};

/// Raw per-node values of one column: tokens for categorical/binary, reals
/// for continuous.
using AttributeColumnValues = std::variant<std::vector<std::string>, Eigen::VectorXd>;
using AttributeTable = std::vector<AttributeColumnValues>;

struct WeightedEdge {
  Index i = 0;
  Index j = 0;
  double weight = 1.0;
};

/// Undirected weighted node-attributed graph. The adjacency is stored
/// symmetrically; self-loops live on the diagonal. Immutable once built.
class Graph {
 public:
  Index num_nodes() const noexcept { return adjacency_.rows(); }
  /// Undirected edge count (self-loops count once).
  std::size_t num_edges() const noexcept { return num_edges_; }
  const SparseMatrix& adjacency() const noexcept { return adjacency_; }
  const AttributeTable& attributes() const noexcept { return attributes_; }
  const AttributeSchema& schema() const noexcept { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const noexcept { return schema_; }
  /// Weighted degree d_i = sum_j w_ij.
  Eigen::VectorXd degrees() const;
  /// Each undirected edge once, i <= j, in row-major order.
  std::vector<WeightedEdge> edges() const;

 private:
  friend Graph build_graph(Index, const std::vector<WeightedEdge>&, AttributeTable,
                           std::shared_ptr<const AttributeSchema>);
  SparseMatrix adjacency_;
  std::size_t num_edges_ = 0;
  AttributeTable attributes_;
  std::shared_ptr<const AttributeSchema> schema_;
};

/// Throws Error{IndexOutOfRange | NonPositiveWeight | DuplicateEdge | SchemaMismatch}.
Graph build_graph(Index n, const std::vector<WeightedEdge>& edges, AttributeTable attributes,
                  std::shared_ptr<const AttributeSchema> schema);

Graph build_graph(Index n, const std::vector<WeightedEdge>& edges);

/// Same topology and attributes under a different (compatible) schema.
Graph with_schema(const Graph& g, std::shared_ptr<const AttributeSchema> schema);

/// Relabels node i as perm[i].
Graph permute_graph(const Graph& g, const std::vector<Index>& perm);

/// Symmetrically normalized adjacency D^{-1/2} W D^{-1/2}, applied as a
/// matrix-vector map. Degree-zero nodes give zero rows and columns.
class ShiftOperator {
 public:
  ShiftOperator() = default;
  explicit ShiftOperator(SparseMatrix matrix) : matrix_(std::move(matrix)) {}

  Index size() const noexcept { return matrix_.rows(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

  void apply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const {
    y.noalias() = matrix_ * x;
  }

 private:
  SparseMatrix matrix_;
};

ShiftOperator normalize_adjacency(const Graph& g);

struct AttributeVector {
  std::string label;
  Eigen::VectorXd values;
  double norm_sq = 0.0;

  AttributeVector() = default;
  AttributeVector(std::string label_, Eigen::VectorXd values_)
      : label(std::move(label_)), values(std::move(values_)), norm_sq(values.squaredNorm()) {}
};

struct AttributeOptions {
  bool include_degree = false;
};

/// Labels of the vectors attribute_vectors() produces, without a graph.
std::vector<std::string> attribute_labels(const AttributeSchema& schema, const AttributeOptions& opts);

/// One indicator per categorical value, one standardized vector per
/// continuous column, then standardized degree. Throws UnknownCategoricalValue.
std::vector<AttributeVector> attribute_vectors(const Graph& g, const AttributeOptions& opts);

/// Mean 0, population standard deviation 1; zero-variance input maps to zero.
Eigen::VectorXd standardize(const Eigen::VectorXd& x);

}  // namespace adoge
