#include "adoge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "adoge/error.hpp"

namespace adoge {

AttributeSchema::AttributeSchema(std::vector<AttributeColumnSpec> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string> names;
  for (const auto& col : columns_) {
    if (!names.insert(col.name).second) {
      throw Error(ErrorCode::SchemaMismatch, "duplicate attribute column name '" + col.name + "'");
    }
    if (col.kind == AttributeKind::Continuous) continue;
    if (col.domain.empty()) {
      throw Error(ErrorCode::SchemaMismatch, "empty domain for column '" + col.name + "'");
    }
    std::unordered_set<std::string> values(col.domain.begin(), col.domain.end());
    if (values.size() != col.domain.size()) {
      throw Error(ErrorCode::SchemaMismatch, "repeated domain value in column '" + col.name + "'");
    }
  }
}

std::size_t AttributeSchema::expanded_size() const noexcept {
  std::size_t d = 0;
  for (const auto& col : columns_) {
    d += col.kind == AttributeKind::Continuous ? 1 : col.domain.size();
  }
  return d;
}

Eigen::VectorXd Graph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(num_nodes());
  for (Index i = 0; i < adjacency_.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) d[i] += it.value();
  }
  return d;
}

std::vector<WeightedEdge> Graph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_edges_);
  for (Index i = 0; i < adjacency_.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) {
      if (it.col() >= i) out.push_back({i, it.col(), it.value()});
    }
  }
  return out;
}

namespace {

void check_attributes(Index n, const AttributeTable& table, const AttributeSchema& schema) {
  if (table.size() != schema.size()) {
    throw Error(ErrorCode::SchemaMismatch, "attribute table has " + std::to_string(table.size()) +
                                               " columns, schema has " + std::to_string(schema.size()));
  }
  for (std::size_t c = 0; c < table.size(); ++c) {
    const auto& spec = schema.columns()[c];
    const bool continuous = spec.kind == AttributeKind::Continuous;
    const auto* reals = std::get_if<Eigen::VectorXd>(&table[c]);
    const auto* tokens = std::get_if<std::vector<std::string>>(&table[c]);
    if (continuous != (reals != nullptr)) {
      throw Error(ErrorCode::SchemaMismatch, "column '" + spec.name + "' storage does not match its kind");
    }
    const auto rows = reals ? reals->size() : static_cast<Index>(tokens->size());
    if (rows != n) {
      throw Error(ErrorCode::SchemaMismatch, "column '" + spec.name + "' has " + std::to_string(rows) +
                                                 " rows for " + std::to_string(n) + " nodes");
    }
  }
}

}  // namespace

Graph build_graph(Index n, const std::vector<WeightedEdge>& edges, AttributeTable attributes,
                  std::shared_ptr<const AttributeSchema> schema) {
  if (n < 0) throw Error(ErrorCode::IndexOutOfRange, "negative node count");
  if (!schema) schema = std::make_shared<const AttributeSchema>();
  check_attributes(n, attributes, *schema);

  std::set<std::pair<Index, Index>> seen;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                                  ") outside [0, " + std::to_string(n) + ")");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonPositiveWeight, "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                                    ") has weight " + std::to_string(e.weight));
    }
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) + ") listed twice");
    }
    triplets.emplace_back(e.i, e.j, e.weight);
    if (e.i != e.j) triplets.emplace_back(e.j, e.i, e.weight);
  }

  Graph g;
  g.adjacency_.resize(n, n);
  g.adjacency_.setFromTriplets(triplets.begin(), triplets.end());
  g.adjacency_.makeCompressed();
  g.num_edges_ = seen.size();
  g.attributes_ = std::move(attributes);
  g.schema_ = std::move(schema);
  return g;
}

Graph build_graph(Index n, const std::vector<WeightedEdge>& edges) {
  return build_graph(n, edges, {}, nullptr);
}

Graph with_schema(const Graph& g, std::shared_ptr<const AttributeSchema> schema) {
  return build_graph(g.num_nodes(), g.edges(), g.attributes(), std::move(schema));
}

Graph permute_graph(const Graph& g, const std::vector<Index>& perm) {
  const Index n = g.num_nodes();
  if (static_cast<Index>(perm.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length differs from node count");
  }
  auto edges = g.edges();
  for (auto& e : edges) {
    e.i = perm[e.i];
    e.j = perm[e.j];
  }
  AttributeTable table;
  table.reserve(g.attributes().size());
  for (const auto& column : g.attributes()) {
    std::visit(
        [&](const auto& values) {
          auto moved = values;
          for (Index i = 0; i < n; ++i) moved[perm[i]] = values[i];
          table.emplace_back(std::move(moved));
        },
        column);
  }
  return build_graph(n, edges, std::move(table), g.schema_ptr());
}

ShiftOperator normalize_adjacency(const Graph& g) {
  const Eigen::VectorXd deg = g.degrees();
  SparseMatrix m = g.adjacency();
  // w_ij / sqrt(d_i d_j): symmetric, and exactly 1/k on k-regular unit graphs.
  // A stored edge implies both degrees are positive.
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      it.valueRef() = it.value() / std::sqrt(deg[i] * deg[it.col()]);
    }
  }
  return ShiftOperator(std::move(m));
}

Eigen::VectorXd standardize(const Eigen::VectorXd& x) {
  if (x.size() == 0) return x;
  const double mean = x.mean();
  const Eigen::VectorXd centered = x.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(x.size());
  // Relative threshold: a constant column can leave round-off residue.
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (!(var > 1e-24 * scale * scale)) return Eigen::VectorXd::Zero(x.size());
  return centered / std::sqrt(var);
}

std::vector<std::string> attribute_labels(const AttributeSchema& schema, const AttributeOptions& opts) {
  std::vector<std::string> labels;
  for (const auto& col : schema.columns()) {
    if (col.kind == AttributeKind::Continuous) {
      labels.push_back("attr:" + col.name);
    } else {
      for (const auto& value : col.domain) labels.push_back("attr:" + col.name + "=" + value);
    }
  }
  if (opts.include_degree) labels.emplace_back("degree");
  return labels;
}

std::vector<AttributeVector> attribute_vectors(const Graph& g, const AttributeOptions& opts) {
  const Index n = g.num_nodes();
  const auto labels = attribute_labels(g.schema(), opts);
  std::vector<AttributeVector> out;
  out.reserve(labels.size());
  auto label = labels.begin();

  for (std::size_t c = 0; c < g.schema().size(); ++c) {
    const auto& spec = g.schema().columns()[c];
    const auto& column = g.attributes()[c];
    if (spec.kind == AttributeKind::Continuous) {
      const auto& x = std::get<Eigen::VectorXd>(column);
      if (!x.allFinite()) {
        throw Error(ErrorCode::NonFiniteFeature, "column '" + spec.name + "' holds a non-finite value");
      }
      out.emplace_back(*label++, standardize(x));
      continue;
    }
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t k = 0; k < spec.domain.size(); ++k) slot.emplace(spec.domain[k], k);
    std::vector<Eigen::VectorXd> indicators(spec.domain.size(), Eigen::VectorXd::Zero(n));
    const auto& tokens = std::get<std::vector<std::string>>(column);
    for (Index i = 0; i < n; ++i) {
      auto it = slot.find(tokens[i]);
      if (it == slot.end()) {
        throw Error(ErrorCode::UnknownCategoricalValue,
                    "node " + std::to_string(i) + " has value '" + tokens[i] + "' outside the domain of '" +
                        spec.name + "'");
      }
      indicators[it->second][i] = 1.0;
    }
    for (auto& v : indicators) out.emplace_back(*label++, std::move(v));
  }
  if (opts.include_degree) out.emplace_back(*label++, standardize(g.degrees()));
  return out;
}

}  // namespace adoge
