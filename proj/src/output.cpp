#include "adoge/output.hpp"

#include <cstdio>

#include <json.hpp>

namespace adoge {

using nlohmann::ordered_json;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_embedding_csv(std::ostream& out, const DatasetEmbedding& result) {
  out << "graph_id";
  for (const auto& c : result.manifest->columns) out << ',' << csv_escape(c.label());
  out << '\n';
  char buf[40];
  for (const auto& e : result.embeddings) {
    out << e.graph_id;
    for (Index k = 0; k < e.values.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", e.values[k]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

namespace {

ordered_json config_json(const EmbeddingConfig& cfg) {
  ordered_json j;
  j["bins"] = cfg.estimator.bins;
  j["eta_l"] = cfg.estimator.eta_l;
  j["probes"] = cfg.estimator.probes;
  j["seed"] = cfg.estimator.seed;
  j["reorthogonalize"] = cfg.estimator.reorthogonalize;
  j["dos_mode"] = cfg.estimator.dos_mode == DosMode::Exact ? "exact" : "probe";
  j["K"] = cfg.K;
  j["eps_guard"] = cfg.eps_guard;
  j["sources"] = {{"dos", cfg.include_dos}, {"ldos", cfg.include_ldos}, {"cldos", cfg.include_cldos}};
  j["features"] = {{"hist", cfg.include_hist}, {"cheb", cfg.include_cheb}, {"pow", cfg.include_pow}};
  j["degree"] = cfg.degree == DegreeMode::Auto ? "auto" : cfg.degree == DegreeMode::Always ? "on" : "off";
  j["pairs"] = cfg.pairs ? "explicit" : "all";
  return j;
}

}  // namespace

std::string manifest_json(const ColumnManifest& manifest, const EmbeddingConfig& cfg, int indent) {
  ordered_json j;
  j["config"] = config_json(cfg);
  j["attributes"] = manifest.attribute_labels;
  auto& pairs = j["pairs"] = ordered_json::array();
  for (const auto& [a, b] : manifest.pairs) pairs.push_back({a, b});
  j["num_columns"] = manifest.size();
  auto& cols = j["columns"] = ordered_json::array();
  // Column 0 of the CSV is graph_id, so feature k sits in CSV column k + 1.
  for (std::size_t k = 0; k < manifest.columns.size(); ++k) {
    const auto& c = manifest.columns[k];
    cols.push_back({{"index", k},
                    {"label", c.label()},
                    {"source", to_string(c.source)},
                    {"attributes", c.attributes},
                    {"feature", to_string(c.feature)},
                    {"order", c.index}});
  }
  return j.dump(indent);
}

RunReport make_run_report(const GraphDataset& ds, const EmbeddingConfig& cfg, const DatasetEmbedding& result) {
  RunReport r;
  r.dataset = ds.name;
  r.num_graphs = ds.graphs.size();
  r.config = cfg;
  r.failures = result.failures;
  r.warnings = ds.report.warnings;
  r.warnings.insert(r.warnings.end(), result.warnings.begin(), result.warnings.end());
  Index clamped = 0;
  std::size_t guarded = 0, zero_vectors = 0;
  for (const auto& e : result.embeddings) {
    r.graph_seconds.emplace_back(e.graph_id, e.seconds);
    clamped += e.diagnostics.clamped_ritz_values;
    guarded += e.diagnostics.guarded_mass_hits;
    zero_vectors += e.diagnostics.zero_attribute_vectors.size();
  }
  if (clamped) r.warnings.push_back(std::to_string(clamped) + " Ritz values clamped into [-1, 1]");
  if (guarded) {
    r.warnings.push_back(std::to_string(guarded) + " histograms carry mass in guarded negative-power bins");
  }
  if (zero_vectors) r.warnings.push_back(std::to_string(zero_vectors) + " all-zero attribute vectors");
  return r;
}

std::string run_report_json(const RunReport& report, int indent) {
  ordered_json j;
  j["dataset"] = report.dataset;
  j["num_graphs"] = report.num_graphs;
  j["embedded"] = report.graph_seconds.size();
  j["config"] = config_json(report.config);
  auto& times = j["graph_seconds"] = ordered_json::array();
  for (const auto& [id, s] : report.graph_seconds) times.push_back({{"graph_id", id}, {"seconds", s}});
  auto& failures = j["failures"] = ordered_json::array();
  for (const auto& f : report.failures) failures.push_back({{"graph_id", f.graph_index}, {"error", f.message}});
  j["warnings"] = report.warnings;
  return j.dump(indent);
}

}  // namespace adoge
