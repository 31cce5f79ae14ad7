#include <doctest.h>

#include <random>

#include "adoge/embedder.hpp"
#include "adoge/error.hpp"
#include "adoge/synthetic.hpp"

using namespace adoge;

namespace {

std::shared_ptr<const AttributeSchema> continuous_schema(std::size_t D) {
  std::vector<AttributeColumnSpec> cols;
  for (std::size_t k = 0; k < D; ++k) cols.push_back({"x" + std::to_string(k), AttributeKind::Continuous, {}});
  return std::make_shared<const AttributeSchema>(cols);
}

Graph k2() { return build_graph(2, {{0, 1, 1.0}}); }

EmbeddingConfig small_config() {
  EmbeddingConfig cfg;
  cfg.estimator.bins = 20;
  cfg.estimator.eta_l = 20;
  cfg.estimator.probes = 4;
  cfg.K = 6;
  return cfg;
}

GraphDataset attributed_dataset(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GraphDataset ds;
  for (std::size_t k = 0; k < N; ++k) {
    ds.graphs.push_back(synthetic::attributed_erdos_renyi(5 + static_cast<Index>(rng() % 30), 0.3, rng));
  }
  ds.schema = ds.graphs.front().schema_ptr();
  return ds;
}

}  // namespace

TEST_CASE("feature_layout: sizes") {
  EmbeddingConfig cfg;
  cfg.degree = DegreeMode::Never;
  CHECK(feature_layout(cfg, *continuous_schema(2)).size() == 1600);
  CHECK(expected_feature_count(cfg, 2, 1) == 1600);
  CHECK(feature_layout(cfg, AttributeSchema{}).size() == 400);
  cfg.include_cldos = false;
  CHECK(feature_layout(cfg, *continuous_schema(1)).size() == 800);
  cfg.include_ldos = false;
  cfg.include_cheb = cfg.include_pow = false;
  CHECK(feature_layout(cfg, *continuous_schema(3)).size() == 200);
}

TEST_CASE("feature_layout: empty feature sets are rejected") {
  EmbeddingConfig cfg;
  cfg.degree = DegreeMode::Never;
  cfg.include_dos = false;
  cfg.include_cldos = false;
  try {
    feature_layout(cfg, AttributeSchema{});
    FAIL("expected EmptyFeatureSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFeatureSet);
  }
  cfg = EmbeddingConfig{};
  cfg.include_hist = cfg.include_cheb = cfg.include_pow = false;
  CHECK_THROWS_AS(feature_layout(cfg, AttributeSchema{}), Error);
}

TEST_CASE("feature_layout: column order and labels") {
  EmbeddingConfig cfg;
  cfg.estimator.bins = 4;
  cfg.K = 2;
  cfg.degree = DegreeMode::Never;
  const auto m = feature_layout(cfg, *continuous_schema(2));
  REQUIRE(m.size() == 4 * 8);
  CHECK(m.columns[0].label() == "dos.hist.0");
  CHECK(m.columns[4].label() == "dos.cheb.1");
  CHECK(m.columns[6].label() == "dos.pow.1");
  CHECK(m.columns[7].label() == "dos.pow.-1");
  CHECK(m.columns[8].label() == "ldos[attr:x0].hist.0");
  CHECK(m.columns[16].label() == "ldos[attr:x1].hist.0");
  CHECK(m.columns[24].label() == "cldos[attr:x0|attr:x1].hist.0");
  CHECK(m.num_sources() == 4);
}

TEST_CASE("feature_layout: degree mode") {
  EmbeddingConfig cfg;
  CHECK(feature_layout(cfg, AttributeSchema{}).attribute_labels == std::vector<std::string>{"degree"});
  CHECK(feature_layout(cfg, *continuous_schema(1)).attribute_labels == std::vector<std::string>{"attr:x0"});
  cfg.degree = DegreeMode::Always;
  CHECK(feature_layout(cfg, *continuous_schema(1)).attribute_labels.size() == 2);
}

TEST_CASE("embed_graph: single edge, exact DOS, hist + cheb") {
  EmbeddingConfig cfg;
  cfg.estimator.bins = 4;
  cfg.estimator.dos_mode = DosMode::Exact;
  cfg.K = 2;
  cfg.include_ldos = cfg.include_cldos = false;
  cfg.include_pow = false;
  const auto e = embed_graph(k2(), cfg);
  REQUIRE(e.values.size() == 6);
  const Eigen::VectorXd expected = (Eigen::VectorXd(6) << 1.0, 0, 0, 1.0, 2.0, 0).finished();
  CHECK((e.values - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embed_graph: probe DOS on the single edge is close to exact") {
  EmbeddingConfig cfg;
  cfg.estimator.bins = 4;
  cfg.estimator.probes = 256;
  cfg.K = 2;
  cfg.include_ldos = cfg.include_cldos = false;
  cfg.include_cheb = cfg.include_pow = false;
  const auto e = embed_graph(k2(), cfg);
  CHECK(e.values.sum() * 0.5 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(e.values[0] - 1.0) < 0.2);
  CHECK(e.values[1] == 0.0);
}

TEST_CASE("embed_graph: a zero attribute vector gives a zero LDOS block") {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  const Eigen::VectorXd one = (Eigen::VectorXd(3) << 1, 2, 4).finished();
  auto g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {zero, one}, continuous_schema(2));
  EmbeddingConfig cfg = small_config();
  cfg.include_dos = false;
  const auto e = embed_graph(g, cfg);
  const Index block = 20 + 12;
  CHECK(e.values.segment(0, block).isZero(0.0));
  CHECK_FALSE(e.values.segment(block, block).isZero(0.0));
  // cLDOS(0, w) = (h(w) - h(0) - h(w)) / 2 = 0.
  CHECK(e.values.segment(2 * block, block).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(e.diagnostics.zero_attribute_vectors == std::vector<std::string>{"attr:x0"});
}

TEST_CASE("embed_graph: permutation invariance") {
  std::mt19937_64 rng(21);
  EmbeddingConfig cfg = small_config();
  cfg.estimator.eta_l = 100;
  for (int t = 0; t < 5; ++t) {
    const auto g = synthetic::attributed_erdos_renyi(10 + static_cast<Index>(rng() % 30), 0.3, rng);
    const auto h = permute_graph(g, synthetic::random_permutation(g.num_nodes(), rng));
    cfg.include_dos = false;
    const auto a = embed_graph(g, cfg), b = embed_graph(h, cfg);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-9);
    // Exact-mode DOS is invariant without any probe matching.
    cfg.include_dos = true;
    cfg.include_ldos = cfg.include_cldos = false;
    cfg.estimator.dos_mode = DosMode::Exact;
    const auto c = embed_graph(g, cfg), d = embed_graph(h, cfg);
    CHECK((c.values - d.values).cwiseAbs().maxCoeff() <= 1e-9);
    cfg = small_config();
    cfg.estimator.eta_l = 100;
  }
}

TEST_CASE("embed_dataset: worker count does not change results") {
  const auto ds = attributed_dataset(12, 4);
  const auto cfg = small_config();
  const auto one = embed_dataset(ds, cfg, 1);
  const auto three = embed_dataset(ds, cfg, 3);
  REQUIRE(one.embeddings.size() == 12);
  REQUIRE(three.embeddings.size() == 12);
  for (std::size_t k = 0; k < 12; ++k) {
    CHECK(one.embeddings[k].graph_id == k);
    CHECK(three.embeddings[k].graph_id == k);
    CHECK(one.embeddings[k].values == three.embeddings[k].values);
  }
}

TEST_CASE("embed_dataset: a malformed graph fails alone") {
  auto ds = attributed_dataset(3, 5);
  // Graph 1 carries a color outside the schema domain.
  auto table = ds.graphs[1].attributes();
  std::get<std::vector<std::string>>(table[0])[0] = "purple";
  ds.graphs[1] = build_graph(ds.graphs[1].num_nodes(), ds.graphs[1].edges(), table, ds.schema);
  const auto r = embed_dataset(ds, small_config(), 2);
  REQUIRE(r.embeddings.size() == 2);
  CHECK(r.embeddings[0].graph_id == 0);
  CHECK(r.embeddings[1].graph_id == 2);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].graph_index == 1);
  CHECK(r.failures[0].message.find("UnknownCategoricalValue") != std::string::npos);
}

TEST_CASE("embed_dataset: a graph's features do not depend on its neighbours") {
  const auto ds = attributed_dataset(6, 8);
  const auto cfg = small_config();
  const auto all = embed_dataset(ds, cfg, 2);
  for (std::size_t k = 0; k < ds.graphs.size(); ++k) {
    CHECK(all.embeddings[k].values == embed_graph(ds.graphs[k], cfg, k).values);
  }
  // LDOS and cLDOS blocks do not depend on the graph index either.
  auto no_dos = cfg;
  no_dos.include_dos = false;
  CHECK(embed_graph(ds.graphs[3], no_dos, 3).values == embed_graph(ds.graphs[3], no_dos, 0).values);
}

TEST_CASE("embed_dataset: dimension does not depend on graph size") {
  std::mt19937_64 rng(9);
  GraphDataset ds;
  ds.graphs.push_back(synthetic::attributed_erdos_renyi(3, 0.9, rng));
  ds.graphs.push_back(synthetic::attributed_erdos_renyi(120, 0.05, rng));
  ds.schema = ds.graphs.front().schema_ptr();
  const auto cfg = small_config();
  const auto r = embed_dataset(ds, cfg);
  REQUIRE(r.embeddings.size() == 2);
  CHECK(r.embeddings[0].values.size() == r.embeddings[1].values.size());
  CHECK(static_cast<std::size_t>(r.embeddings[0].values.size()) == r.manifest->size());
}

TEST_CASE("embed_dataset: histogram budget warning") {
  auto cfg = small_config();
  cfg.histogram_budget = 2;
  const auto r = embed_dataset(attributed_dataset(1, 1), cfg);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("embedding config validation") {
  auto cfg = small_config();
  cfg.K = 3;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.pairs = std::vector<AttributePair>{{0, 9}};
  CHECK_THROWS_AS(feature_layout(cfg, *continuous_schema(2)), Error);
}
