#include "adoge/embedder.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "adoge/error.hpp"

namespace adoge {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Hist: return "hist";
    case FeatureKind::Cheb: return "cheb";
    case FeatureKind::Pow: return "pow";
  }
  return "unknown";
}

void EmbeddingConfig::validate() const {
  estimator.validate();
  if (!(include_dos || include_ldos || include_cldos) || !(include_hist || include_cheb || include_pow)) {
    throw Error(ErrorCode::EmptyFeatureSet, "no histogram source or no feature kind enabled");
  }
  if (K < 2 || K % 2 != 0) throw Error(ErrorCode::InvalidConfig, "K must be even and >= 2, got " + std::to_string(K));
  if (!(eps_guard > 0.0)) throw Error(ErrorCode::InvalidConfig, "eps_guard must be positive");
}

AttributeOptions EmbeddingConfig::attribute_options(const AttributeSchema& schema) const {
  AttributeOptions opts;
  opts.include_degree = degree == DegreeMode::Always || (degree == DegreeMode::Auto && schema.size() == 0);
  return opts;
}

std::string ColumnDescriptor::label() const {
  std::string out(to_string(source));
  if (!attributes.empty()) {
    out += '[';
    for (std::size_t k = 0; k < attributes.size(); ++k) {
      if (k) out += '|';
      out += attributes[k];
    }
    out += ']';
  }
  out += '.';
  out += to_string(feature);
  out += '.';
  out += std::to_string(index);
  return out;
}

std::size_t ColumnManifest::num_sources() const noexcept {
  std::size_t count = 0;
  const ColumnDescriptor* prev = nullptr;
  for (const auto& c : columns) {
    if (!prev || prev->source != c.source || prev->attributes != c.attributes) ++count;
    prev = &c;
  }
  return count;
}

namespace {

std::size_t block_width(const EmbeddingConfig& cfg) {
  const auto B = static_cast<std::size_t>(cfg.estimator.bins);
  const auto K = static_cast<std::size_t>(cfg.K);
  return (cfg.include_hist ? B : 0) + (cfg.include_cheb ? K : 0) + (cfg.include_pow ? K : 0);
}

void append_block(std::vector<ColumnDescriptor>& out, const EmbeddingConfig& cfg, HistogramKind source,
                  const std::vector<std::string>& attributes) {
  auto push = [&](FeatureKind kind, int index) { out.push_back({source, attributes, kind, index}); };
  if (cfg.include_hist) {
    for (Index b = 0; b < cfg.estimator.bins; ++b) push(FeatureKind::Hist, static_cast<int>(b));
  }
  if (cfg.include_cheb) {
    for (Index k = 1; k <= cfg.K; ++k) push(FeatureKind::Cheb, static_cast<int>(k));
  }
  if (cfg.include_pow) {
    for (Index k = 1; k <= cfg.K / 2; ++k) push(FeatureKind::Pow, static_cast<int>(k));
    for (Index k = 1; k <= cfg.K / 2; ++k) push(FeatureKind::Pow, -static_cast<int>(k));
  }
}

std::vector<AttributePair> resolve_pairs(const EmbeddingConfig& cfg, std::size_t D) {
  std::vector<AttributePair> pairs;
  if (!cfg.pairs) {
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t j = i + 1; j < D; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  for (const auto& [i, j] : *cfg.pairs) {
    if (i >= D || j >= D || i == j) {
      throw Error(ErrorCode::InvalidConfig, "attribute pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                                ") invalid for " + std::to_string(D) + " attribute vectors");
    }
    pairs.emplace_back(i, j);
  }
  return pairs;
}

}  // namespace

std::size_t expected_feature_count(const EmbeddingConfig& cfg, std::size_t num_attributes, std::size_t num_pairs) {
  const std::size_t sources = (cfg.include_dos ? 1 : 0) + (cfg.include_ldos ? num_attributes : 0) +
                              (cfg.include_cldos ? num_pairs : 0);
  return block_width(cfg) * sources;
}

ColumnManifest feature_layout(const EmbeddingConfig& cfg, const AttributeSchema& schema) {
  cfg.validate();
  ColumnManifest m;
  m.attribute_labels = attribute_labels(schema, cfg.attribute_options(schema));
  if (cfg.include_cldos) m.pairs = resolve_pairs(cfg, m.attribute_labels.size());

  if (cfg.include_dos) append_block(m.columns, cfg, HistogramKind::DOS, {});
  if (cfg.include_ldos) {
    for (const auto& label : m.attribute_labels) append_block(m.columns, cfg, HistogramKind::LDOS, {label});
  }
  for (const auto& [i, j] : m.pairs) {
    append_block(m.columns, cfg, HistogramKind::CLDOS, {m.attribute_labels[i], m.attribute_labels[j]});
  }
  if (m.columns.empty()) {
    throw Error(ErrorCode::EmptyFeatureSet, "configuration and schema yield no feature columns");
  }
  return m;
}

FilterBank make_filterbank(const EmbeddingConfig& cfg) {
  cfg.validate();
  return {chebyshev_frf_table(cfg.K, cfg.estimator.bins), power_frf_table(cfg.K, cfg.estimator.bins, cfg.eps_guard)};
}

Embedding embed_graph(const Graph& g, const EmbeddingConfig& cfg, const FilterBank& bank,
                      std::shared_ptr<const ColumnManifest> manifest, std::size_t graph_index) {
  const auto started = std::chrono::steady_clock::now();
  const auto attrs = attribute_vectors(g, cfg.attribute_options(g.schema()));
  if (attrs.size() != manifest->attribute_labels.size()) {
    throw Error(ErrorCode::SchemaMismatch, "graph yields " + std::to_string(attrs.size()) +
                                               " attribute vectors, layout expects " +
                                               std::to_string(manifest->attribute_labels.size()));
  }
  for (std::size_t k = 0; k < attrs.size(); ++k) {
    if (attrs[k].label != manifest->attribute_labels[k]) {
      throw Error(ErrorCode::SchemaMismatch, "attribute '" + attrs[k].label + "' does not match layout column '" +
                                                 manifest->attribute_labels[k] + "'");
    }
  }

  const ShiftOperator op = normalize_adjacency(g);
  const auto& est = cfg.estimator;

  Embedding out;
  out.graph_id = graph_index;
  out.manifest = manifest;
  out.values.resize(static_cast<Index>(manifest->size()));
  Index cursor = 0;

  auto emit = [&](const SpectralHistogram& h) {
    out.diagnostics.clamped_ritz_values += h.clamped_nodes;
    if (cfg.include_hist) {
      out.values.segment(cursor, h.size()) = h.bins;
      cursor += h.size();
    }
    if (cfg.include_cheb) {
      out.values.segment(cursor, cfg.K) = aggregate(h, bank.chebyshev);
      cursor += cfg.K;
    }
    if (cfg.include_pow) {
      out.values.segment(cursor, cfg.K) = aggregate(h, bank.power);
      cursor += cfg.K;
      if (guard_hit(h, bank.power)) ++out.diagnostics.guarded_mass_hits;
    }
  };

  if (cfg.include_dos) emit(estimate_dos_hist(op, est, graph_index));

  std::vector<std::optional<SpectralHistogram>> ldos(attrs.size());
  auto ldos_of = [&](std::size_t k) -> const SpectralHistogram& {
    if (!ldos[k]) ldos[k] = estimate_ldos_hist(op, attrs[k], est);
    return *ldos[k];
  };
  for (const auto& a : attrs) {
    if (a.norm_sq == 0.0) out.diagnostics.zero_attribute_vectors.push_back(a.label);
  }
  if (cfg.include_ldos) {
    for (std::size_t k = 0; k < attrs.size(); ++k) emit(ldos_of(k));
  }
  for (const auto& [i, j] : manifest->pairs) {
    const Eigen::VectorXd sum = attrs[i].values + attrs[j].values;
    emit(combine_cldos(estimate_ldos_hist(op, sum, est), ldos_of(i), ldos_of(j)));
  }

  if (cursor != out.values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "embedding filled " + std::to_string(cursor) + " of " +
                                                  std::to_string(out.values.size()) + " columns");
  }
  for (Index c = 0; c < out.values.size(); ++c) {
    if (!std::isfinite(out.values[c])) {
      throw Error(ErrorCode::NonFiniteFeature,
                  "graph " + std::to_string(graph_index) + " column " + manifest->columns[c].label());
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

Embedding embed_graph(const Graph& g, const EmbeddingConfig& cfg, std::size_t graph_index) {
  auto manifest = std::make_shared<const ColumnManifest>(feature_layout(cfg, g.schema()));
  return embed_graph(g, cfg, make_filterbank(cfg), std::move(manifest), graph_index);
}

DatasetEmbedding embed_dataset(const GraphDataset& ds, const EmbeddingConfig& cfg, std::size_t workers) {
  if (workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be >= 1");
  DatasetEmbedding result;
  result.manifest = std::make_shared<const ColumnManifest>(feature_layout(cfg, *ds.schema));
  const FilterBank bank = make_filterbank(cfg);
  if (result.manifest->num_sources() > cfg.histogram_budget) {
    result.warnings.push_back("layout needs " + std::to_string(result.manifest->num_sources()) +
                              " histograms per graph, above the budget of " + std::to_string(cfg.histogram_budget) +
                              "; consider an explicit pair list");
  }

  const std::size_t N = ds.graphs.size();
  std::vector<std::optional<Embedding>> slots(N);
  std::vector<std::string> errors(N);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < N; k = next++) {
      try {
        slots[k] = embed_graph(ds.graphs[k], cfg, bank, result.manifest, k);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, N); ++w) pool.emplace_back(work);
    work();
  }

  for (std::size_t k = 0; k < N; ++k) {
    if (slots[k]) {
      result.embeddings.push_back(std::move(*slots[k]));
    } else {
      result.failures.push_back({k, errors[k]});
    }
  }
  return result;
}

}  // namespace adoge
