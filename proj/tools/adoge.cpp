// Command-line front end: embed a dataset, run the oracle self-check, or
// print the feature layout for a configuration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adoge/embedder.hpp"
#include "adoge/error.hpp"
#include "adoge/ingest.hpp"
#include "adoge/output.hpp"
#include "adoge/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace adoge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct CommonOptions {
  Index bins = 200;
  Index eta_l = 100;
  Index K = 100;
  Index probes = 16;
  std::uint64_t seed = 0;
  std::string features = "dos,ldos,cldos;hist,cheb,pow";
  std::string pairs = "all";
  std::string degree = "auto";
  double eps_guard = 0.05;
  bool no_reorth = false;
  std::string dos_mode = "probe";
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ADOGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric ADOGE_SEED='" << env << "'\n";
    }
  }
  return 0;
}

void add_config_flags(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--bins", o.bins, "Histogram bins B (even)")->capture_default_str();
  cmd.add_option("--eta-l", o.eta_l, "Lanczos steps")->capture_default_str();
  cmd.add_option("--frf", o.K, "Functions per filterbank family K (even)")->capture_default_str();
  cmd.add_option("--probes", o.probes, "DOS probe vectors")->capture_default_str();
  cmd.add_option("--seed", o.seed, "Random seed (default: $ADOGE_SEED or 0)");
  cmd.add_option("--features", o.features, "Sources and kinds, e.g. 'dos,ldos;hist,pow'")->capture_default_str();
  cmd.add_option("--pairs", o.pairs, "'all' or a file of attribute index pairs")->capture_default_str();
  cmd.add_option("--degree", o.degree, "Degree attribute: auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  cmd.add_option("--eps-guard", o.eps_guard, "Zero negative powers for |lambda| below this")->capture_default_str();
  cmd.add_flag("--no-reorth", o.no_reorth, "Disable full reorthogonalization");
  cmd.add_option("--dos-mode", o.dos_mode, "DOS estimator: probe|exact (exact runs one Lanczos per node)")
      ->check(CLI::IsMember({"probe", "exact"}))
      ->capture_default_str();
}

std::vector<AttributePair> read_pairs(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::MissingRequiredFile, "cannot open pair file " + file.string());
  std::vector<AttributePair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (auto& c : line) c = c == ',' ? ' ' : c;
    std::istringstream fields(line);
    std::size_t a = 0, b = 0;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) {
      throw Error(ErrorCode::MalformedLine, file.string() + ":" + std::to_string(line_no) + ": expected 'i j'");
    }
    out.emplace_back(a, b);
  }
  return out;
}

EmbeddingConfig make_config(const CommonOptions& o) {
  EmbeddingConfig cfg;
  cfg.estimator.bins = o.bins;
  cfg.estimator.eta_l = o.eta_l;
  cfg.estimator.probes = o.probes;
  cfg.estimator.seed = o.seed;
  cfg.estimator.reorthogonalize = !o.no_reorth;
  cfg.estimator.dos_mode = o.dos_mode == "exact" ? DosMode::Exact : DosMode::Probe;
  cfg.K = o.K;
  cfg.eps_guard = o.eps_guard;
  cfg.degree = o.degree == "on" ? DegreeMode::Always : o.degree == "off" ? DegreeMode::Never : DegreeMode::Auto;

  bool any_source = false, any_kind = false;
  bool dos = false, ldos = false, cldos = false, hist = false, cheb = false, pow = false;
  std::string token;
  std::istringstream in(o.features);
  while (std::getline(in, token, ',')) {
    std::istringstream parts(token);
    std::string t;
    while (std::getline(parts, t, ';')) {
      t.erase(0, t.find_first_not_of(" \t"));
      t.erase(t.find_last_not_of(" \t") + 1);
      if (t.empty()) continue;
      if (t == "dos") dos = any_source = true;
      else if (t == "ldos") ldos = any_source = true;
      else if (t == "cldos") cldos = any_source = true;
      else if (t == "hist") hist = any_kind = true;
      else if (t == "cheb") cheb = any_kind = true;
      else if (t == "pow") pow = any_kind = true;
      else throw Error(ErrorCode::InvalidConfig, "unknown feature token '" + t + "'");
    }
  }
  cfg.include_dos = any_source ? dos : true;
  cfg.include_ldos = any_source ? ldos : true;
  cfg.include_cldos = any_source ? cldos : true;
  cfg.include_hist = any_kind ? hist : true;
  cfg.include_cheb = any_kind ? cheb : true;
  cfg.include_pow = any_kind ? pow : true;
  if (o.pairs != "all") cfg.pairs = read_pairs(o.pairs);
  return cfg;
}

GraphDataset load(const std::string& input, const std::string& format, const std::string& prefix) {
  if (format == "tudataset") return prefix.empty() ? load_tudataset(input) : load_tudataset(input, prefix);
  return load_edgelist_dataset(input);
}

fs::path manifest_path(const fs::path& out) {
  auto p = out;
  p.replace_extension(".manifest.json");
  return p;
}

int run_embed(const std::string& input, const std::string& format, const std::string& prefix, const fs::path& out,
              const std::string& report_path, std::size_t jobs, const CommonOptions& o) {
  const auto cfg = make_config(o);
  const auto ds = load(input, format, prefix);
  const auto result = embed_dataset(ds, cfg, jobs);

  {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw Error(ErrorCode::IoError, "cannot write " + out.string());
    write_embedding_csv(csv, result);
  }
  {
    std::ofstream mf(manifest_path(out), std::ios::binary);
    if (!mf) throw Error(ErrorCode::IoError, "cannot write " + manifest_path(out).string());
    mf << manifest_json(*result.manifest, cfg) << '\n';
  }
  const auto report = make_run_report(ds, cfg, result);
  if (!report_path.empty()) {
    std::ofstream rp(report_path, std::ios::binary);
    if (!rp) throw Error(ErrorCode::IoError, "cannot write " + report_path);
    rp << run_report_json(report) << '\n';
  }

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& f : result.failures) std::cerr << "error: graph " << f.graph_index << ": " << f.message << '\n';
  std::cerr << "embedded " << result.embeddings.size() << "/" << ds.graphs.size() << " graphs, "
            << result.manifest->size() << " features each -> " << out.string() << '\n';
  if (result.failures.empty()) return kExitOk;
  return result.embeddings.empty() ? kExitFatal : kExitPartial;
}

int run_info(const std::string& input, const std::string& format, const std::string& prefix, int num_attributes,
             bool list, const CommonOptions& o) {
  const auto cfg = make_config(o);
  std::shared_ptr<const AttributeSchema> schema;
  if (!input.empty()) {
    schema = load(input, format, prefix).schema;
  } else {
    std::vector<AttributeColumnSpec> cols;
    for (int k = 0; k < num_attributes; ++k) cols.push_back({"x" + std::to_string(k), AttributeKind::Continuous, {}});
    schema = std::make_shared<const AttributeSchema>(std::move(cols));
  }
  const auto manifest = feature_layout(cfg, *schema);
  std::cout << "attributes: " << manifest.attribute_labels.size() << '\n';
  std::cout << "pairs: " << manifest.pairs.size() << '\n';
  if (list) {
    for (std::size_t k = 0; k < manifest.size(); ++k) std::cout << k << '\t' << manifest.columns[k].label() << '\n';
  }
  std::cout << "total features: " << manifest.size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral density embeddings of node-attributed graphs"};
  app.require_subcommand(1);

  CommonOptions embed_opts, info_opts;
  embed_opts.seed = info_opts.seed = default_seed();

  std::string input, format = "tudataset", prefix, out = "embedding.csv", report;
  std::size_t jobs = 1;
  auto* embed = app.add_subcommand("embed", "Embed every graph of a dataset");
  embed->add_option("--input", input, "Dataset directory (or edge-list file)")->required();
  embed->add_option("--format", format, "tudataset|edgelist")
      ->check(CLI::IsMember({"tudataset", "edgelist"}))
      ->capture_default_str();
  embed->add_option("--prefix", prefix, "TUDataset file prefix (default: the unique *_A.txt)");
  embed->add_option("--out", out, "Embedding CSV; the manifest goes next to it")->capture_default_str();
  embed->add_option("--report", report, "Run report JSON");
  embed->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_config_flags(*embed, embed_opts);

  SelfCheckOptions check;
  check.seed = default_seed();
  auto* selfcheck = app.add_subcommand("selfcheck", "Compare estimators against the dense oracle");
  selfcheck->add_option("--n-max", check.n_max, "Largest random graph")->capture_default_str();
  selfcheck->add_option("--trials", check.trials, "Random graphs")->capture_default_str();
  selfcheck->add_option("--seed", check.seed, "Random seed");
  selfcheck->add_option("--bins", check.bins, "Histogram bins")->capture_default_str();
  selfcheck->add_option("--tolerance", check.tolerance, "Max L1 deviation")->capture_default_str();
  selfcheck->add_flag("--inject-fault", check.inject_fault)->group("");

  std::string info_input, info_format = "tudataset", info_prefix;
  int num_attributes = 0;
  bool list = false;
  auto* info = app.add_subcommand("info", "Print the feature layout without embedding");
  info->add_option("--input", info_input, "Dataset whose schema defines the attributes");
  info->add_option("--format", info_format, "tudataset|edgelist")->check(CLI::IsMember({"tudataset", "edgelist"}));
  info->add_option("--prefix", info_prefix, "TUDataset file prefix");
  info->add_option("--num-attributes", num_attributes, "Continuous attributes when no --input is given")
      ->check(CLI::NonNegativeNumber);
  info->add_flag("--list", list, "Print every column label");
  add_config_flags(*info, info_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*embed) return run_embed(input, format, prefix, out, report, jobs, embed_opts);
    if (*info) return run_info(info_input, info_format, info_prefix, num_attributes, list, info_opts);
    if (*selfcheck) {
      const auto result = run_selfcheck(check);
      print_selfcheck(std::cout, check, result);
      return result.passed ? kExitOk : kExitFatal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
