#include "adoge/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace adoge::synthetic {

Graph erdos_renyi(Index n, double p, std::mt19937_64& rng, double w_min, double w_max) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<WeightedEdge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (!coin(rng)) continue;
      // 1 - U lies in (0, 1], so the weight lies in (w_min, w_max].
      edges.push_back({i, j, w_min + (w_max - w_min) * (1.0 - unit(rng))});
    }
  }
  return build_graph(n, edges);
}

std::vector<Index> random_permutation(Index n, std::mt19937_64& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

Graph attributed_erdos_renyi(Index n, double p, std::mt19937_64& rng) {
  static const auto schema = std::make_shared<const AttributeSchema>(std::vector<AttributeColumnSpec>{
      {"color", AttributeKind::Categorical, {"a", "b", "c"}},
      {"mass", AttributeKind::Continuous, {}},
  });
  const Graph base = erdos_renyi(n, p, rng);
  std::uniform_int_distribution<int> pick(0, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::string> colors;
  Eigen::VectorXd mass(n);
  for (Index i = 0; i < n; ++i) {
    colors.push_back(schema->columns()[0].domain[static_cast<std::size_t>(pick(rng))]);
    mass[i] = normal(rng);
  }
  AttributeTable table;
  table.emplace_back(std::move(colors));
  table.emplace_back(std::move(mass));
  return build_graph(n, base.edges(), std::move(table), schema);
}

Graph random_graph_with_edges(Index n, std::size_t m, std::mt19937_64& rng,
                              std::shared_ptr<const AttributeSchema> schema, AttributeTable table) {
  std::uniform_int_distribution<Index> node(0, n - 1);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::set<std::pair<Index, Index>> seen;
  const auto max_edges = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  m = std::min(m, max_edges);
  std::vector<WeightedEdge> edges;
  while (edges.size() < m) {
    const Index i = node(rng), j = node(rng);
    if (i == j || !seen.insert(std::minmax(i, j)).second) continue;
    edges.push_back({i, j, weight(rng)});
  }
  return build_graph(n, edges, std::move(table), std::move(schema));
}

}  // namespace adoge::synthetic
