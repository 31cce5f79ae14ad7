#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "adoge/graph.hpp"

namespace adoge::synthetic {

/// G(n, p) with i.i.d. weights uniform in (w_min, w_max]; no attributes.
Graph erdos_renyi(Index n, double p, std::mt19937_64& rng, double w_min = 0.0, double w_max = 2.0);

/// Uniform random permutation of 0..n-1.
std::vector<Index> random_permutation(Index n, std::mt19937_64& rng);

/// G(n, p) with a categorical column "color" over {a, b, c} and a
/// continuous column "mass".
Graph attributed_erdos_renyi(Index n, double p, std::mt19937_64& rng);

/// Random graph with about m undirected edges (no duplicates, no loops).
Graph random_graph_with_edges(Index n, std::size_t m, std::mt19937_64& rng,
                              std::shared_ptr<const AttributeSchema> schema = nullptr, AttributeTable table = {});

}  // namespace adoge::synthetic
