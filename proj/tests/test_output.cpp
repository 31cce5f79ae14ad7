#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "adoge/output.hpp"
#include "adoge/synthetic.hpp"

using namespace adoge;
using nlohmann::json;

namespace {

EmbeddingConfig tiny_config() {
  EmbeddingConfig cfg;
  cfg.estimator.bins = 4;
  cfg.estimator.eta_l = 10;
  cfg.estimator.probes = 2;
  cfg.K = 2;
  return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("write_embedding_csv: header, rows and round-trip precision") {
  std::mt19937_64 rng(2);
  GraphDataset ds;
  ds.graphs = {synthetic::erdos_renyi(6, 0.5, rng), synthetic::erdos_renyi(9, 0.4, rng)};
  const auto cfg = tiny_config();
  const auto result = embed_dataset(ds, cfg);
  std::ostringstream out;
  write_embedding_csv(out, result);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);

  const auto header = fields_of(lines[0]);
  REQUIRE(header.size() == 1 + result.manifest->size());
  CHECK(header[0] == "graph_id");
  CHECK(header[1] == "dos.hist.0");
  CHECK(header.back() == "ldos[degree].pow.-1");

  for (std::size_t r = 0; r < 2; ++r) {
    const auto row = fields_of(lines[r + 1]);
    REQUIRE(row.size() == header.size());
    CHECK(row[0] == std::to_string(r));
    for (std::size_t c = 1; c < row.size(); ++c) {
      CHECK(std::stod(row[c]) == result.embeddings[r].values[static_cast<Index>(c - 1)]);
    }
  }
}

TEST_CASE("write_embedding_csv: failed graphs are skipped") {
  DatasetEmbedding r;
  r.manifest = std::make_shared<const ColumnManifest>(feature_layout(tiny_config(), AttributeSchema{}));
  Embedding e;
  e.graph_id = 4;
  e.values = Eigen::VectorXd::Constant(static_cast<Index>(r.manifest->size()), 0.1);
  r.embeddings.push_back(e);
  r.failures.push_back({2, "broken"});
  std::ostringstream out;
  write_embedding_csv(out, r);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].rfind("4,0.10000000000000001,", 0) == 0);
}

TEST_CASE("manifest_json describes every column") {
  const auto cfg = tiny_config();
  std::vector<AttributeColumnSpec> cols = {{"c", AttributeKind::Categorical, {"a", "b"}}};
  const auto m = feature_layout(cfg, AttributeSchema(cols));
  const auto j = json::parse(manifest_json(m, cfg));
  CHECK(j["num_columns"] == m.size());
  CHECK(j["columns"].size() == m.size());
  CHECK(j["attributes"] == json::array({"attr:c=a", "attr:c=b"}));
  CHECK(j["pairs"] == json::array({json::array({0, 1})}));
  CHECK(j["config"]["bins"] == 4);
  CHECK(j["config"]["dos_mode"] == "probe");
  const auto& last = j["columns"].back();
  CHECK(last["source"] == "cldos");
  CHECK(last["attributes"] == json::array({"attr:c=a", "attr:c=b"}));
  CHECK(last["feature"] == "pow");
  CHECK(last["order"] == -1);
  CHECK(last["label"] == "cldos[attr:c=a|attr:c=b].pow.-1");
}

TEST_CASE("run report lists failures and warnings") {
  GraphDataset ds;
  ds.name = "toy";
  ds.graphs.push_back(build_graph(3, {{0, 1, 1.0}}));
  ds.report.warnings.push_back("edge file does not list every edge in both directions");
  const auto cfg = tiny_config();
  auto result = embed_dataset(ds, cfg);
  result.failures.push_back({1, "SchemaMismatch: x"});
  const auto j = json::parse(run_report_json(make_run_report(ds, cfg, result)));
  CHECK(j["dataset"] == "toy");
  CHECK(j["embedded"] == 1);
  CHECK(j["failures"][0]["graph_id"] == 1);
  CHECK(j["warnings"][0] == "edge file does not list every edge in both directions");
}

TEST_CASE("csv_escape") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
