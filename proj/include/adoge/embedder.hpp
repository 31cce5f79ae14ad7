#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "adoge/filterbank.hpp"
#include "adoge/graph.hpp"
#include "adoge/histogram.hpp"
#include "adoge/ingest.hpp"

namespace adoge {

enum class FeatureKind { Hist, Cheb, Pow };

std::string_view to_string(FeatureKind kind);

/// Degree joins the attribute vectors always, never, or only when the
/// schema has no columns (plain graphs).
enum class DegreeMode { Auto, Always, Never };

using AttributePair = std::pair<std::size_t, std::size_t>;

struct EmbeddingConfig {
  EstimatorConfig estimator;
  Index K = 100;
  bool include_dos = true;
  bool include_ldos = true;
  bool include_cldos = true;
  bool include_hist = true;
  bool include_cheb = true;
  bool include_pow = true;
  DegreeMode degree = DegreeMode::Auto;
  /// nullopt selects every unordered pair in lexicographic order.
  std::optional<std::vector<AttributePair>> pairs;
  double eps_guard = 0.05;
  /// Number of source histograms above which a warning is raised.
  std::size_t histogram_budget = 1000;

  void validate() const;
  AttributeOptions attribute_options(const AttributeSchema& schema) const;
};

struct ColumnDescriptor {
  HistogramKind source = HistogramKind::DOS;
  std::vector<std::string> attributes;
  FeatureKind feature = FeatureKind::Hist;
  /// Bin index (hist), Chebyshev order (cheb) or signed exponent (pow).
  int index = 0;

  std::string label() const;
  bool operator==(const ColumnDescriptor&) const = default;
};

struct ColumnManifest {
  std::vector<ColumnDescriptor> columns;
  /// Attribute vectors and the pairs the cLDOS blocks use, in layout order.
  std::vector<std::string> attribute_labels;
  std::vector<AttributePair> pairs;

  std::size_t size() const noexcept { return columns.size(); }
  /// Number of (cL)DOS histograms the layout needs.
  std::size_t num_sources() const noexcept;
};

/// Column order: DOS block, per-attribute LDOS blocks, per-pair cLDOS
/// blocks; each block is [hist B][cheb K][pow K] restricted to enabled kinds.
/// Throws EmptyFeatureSet.
ColumnManifest feature_layout(const EmbeddingConfig& cfg, const AttributeSchema& schema);

/// (B + 2K)(1 + D + C(D, 2)) with every flag on; per-block sums otherwise.
std::size_t expected_feature_count(const EmbeddingConfig& cfg, std::size_t num_attributes, std::size_t num_pairs);

struct FilterBank {
  FRFTable chebyshev;
  FRFTable power;
};

FilterBank make_filterbank(const EmbeddingConfig& cfg);

struct EmbedDiagnostics {
  Index clamped_ritz_values = 0;
  std::size_t guarded_mass_hits = 0;
  std::vector<std::string> zero_attribute_vectors;
};

struct Embedding {
  std::size_t graph_id = 0;
  Eigen::VectorXd values;
  std::shared_ptr<const ColumnManifest> manifest;
  EmbedDiagnostics diagnostics;
  double seconds = 0.0;
};

/// Deterministic given cfg.estimator.seed and graph_index (which keys the
/// DOS probe stream). Throws NonFiniteFeature and propagates estimator errors.
Embedding embed_graph(const Graph& g, const EmbeddingConfig& cfg, const FilterBank& bank,
                      std::shared_ptr<const ColumnManifest> manifest, std::size_t graph_index = 0);

Embedding embed_graph(const Graph& g, const EmbeddingConfig& cfg, std::size_t graph_index = 0);

struct GraphFailure {
  std::size_t graph_index = 0;
  std::string message;
};

struct DatasetEmbedding {
  std::shared_ptr<const ColumnManifest> manifest;
  std::vector<Embedding> embeddings;  // successful graphs, dataset order
  std::vector<GraphFailure> failures;
  std::vector<std::string> warnings;
};

/// Graphs are distributed over `workers` threads; results come back in
/// dataset order whatever the schedule.
DatasetEmbedding embed_dataset(const GraphDataset& ds, const EmbeddingConfig& cfg, std::size_t workers = 1);

}  // namespace adoge
