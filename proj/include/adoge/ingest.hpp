#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adoge/graph.hpp"

namespace adoge {

struct IngestReport {
  std::size_t edge_lines = 0;        // records read from the edge file
  std::size_t undirected_edges = 0;  // after canonical (min, max) deduplication
  /// True when every undirected non-loop edge appeared in both directions.
  bool mirrored = true;
  std::vector<std::string> warnings;
};

struct GraphDataset {
  std::string name;
  std::vector<Graph> graphs;
  std::shared_ptr<const AttributeSchema> schema = std::make_shared<const AttributeSchema>();
  std::optional<std::vector<int>> graph_labels;
  IngestReport report;
};

/// Reads {prefix}_A.txt, {prefix}_graph_indicator.txt and the optional
/// node label / node attribute / edge attribute / graph label files.
GraphDataset load_tudataset(const std::filesystem::path& directory, const std::string& prefix);

/// Finds the unique *_A.txt in directory and loads it.
GraphDataset load_tudataset(const std::filesystem::path& directory);

/// Writes a dataset in the same layout. Categorical columns must hold
/// integer tokens; only the first categorical column becomes node labels.
void write_tudataset(const GraphDataset& ds, const std::filesystem::path& directory, const std::string& prefix);

/// "i j [w]" per line, 0-indexed, '#' comments allowed. The optional
/// attribute file has a header row of column names, a "#kind" row, then one
/// row per node (whitespace or comma separated).
Graph load_edgelist(const std::filesystem::path& graph_file,
                    const std::optional<std::filesystem::path>& attr_file = std::nullopt);

/// Every *.edges file in directory (sorted by name), each with an optional
/// sibling *.attrs file. Categorical domains are merged across graphs.
GraphDataset load_edgelist_dataset(const std::filesystem::path& directory);

}  // namespace adoge
