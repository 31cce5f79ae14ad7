#pragma once

#include <ostream>
#include <string>

#include "adoge/embedder.hpp"

namespace adoge {

/// Header "graph_id,<manifest labels>", then one row per embedded graph with
/// features printed to 17 significant digits.
void write_embedding_csv(std::ostream& out, const DatasetEmbedding& result);

/// Manifest with per-column provenance, as JSON text.
std::string manifest_json(const ColumnManifest& manifest, const EmbeddingConfig& cfg, int indent = 2);

struct RunReport {
  std::string dataset;
  std::size_t num_graphs = 0;
  EmbeddingConfig config;
  std::vector<std::pair<std::size_t, double>> graph_seconds;  // successful graphs only
  std::vector<GraphFailure> failures;
  std::vector<std::string> warnings;
};

RunReport make_run_report(const GraphDataset& ds, const EmbeddingConfig& cfg, const DatasetEmbedding& result);
std::string run_report_json(const RunReport& report, int indent = 2);

std::string csv_escape(const std::string& field);

}  // namespace adoge
