#include "adoge/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "adoge/error.hpp"
#include "adoge/histogram.hpp"
#include "adoge/oracle.hpp"
#include "adoge/synthetic.hpp"

namespace adoge {

namespace {

double l1(const SpectralHistogram& a, const SpectralHistogram& b) { return (a.bins - b.bins).cwiseAbs().sum(); }

}  // namespace

SelfCheckResult run_selfcheck(const SelfCheckOptions& opts) {
  if (opts.n_max < 1 || opts.trials < 1 || opts.vectors_per_graph < 1) {
    throw Error(ErrorCode::InvalidConfig, "selfcheck needs n_max >= 1, trials >= 1, vectors >= 1");
  }
  SelfCheckResult r;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Index> size(std::min<Index>(8, opts.n_max), opts.n_max);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int t = 0; t < opts.trials; ++t) {
    const Index n = size(rng);
    const Graph g = synthetic::erdos_renyi(n, opts.edge_probability, rng);
    const ShiftOperator op = normalize_adjacency(g);
    const auto spec = oracle::exact_spectrum(op);

    EstimatorConfig cfg;
    cfg.bins = opts.bins;
    cfg.eta_l = n;
    cfg.seed = opts.seed;
    cfg.reorthogonalize = true;

    std::vector<Eigen::VectorXd> vectors;
    for (int k = 0; k < opts.vectors_per_graph; ++k) {
      vectors.push_back(Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); }));
    }
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      auto h = estimate_ldos_hist(op, vectors[k], cfg);
      if (opts.inject_fault) h.bins[0] += 1e-3;
      r.max_ldos_l1 = std::max(r.max_ldos_l1, l1(h, oracle::exact_ldos_hist(spec, vectors[k], opts.bins)));

      const auto& w = vectors[(k + 1) % vectors.size()];
      const Eigen::VectorXd sum = vectors[k] + w;
      const auto c = combine_cldos(estimate_ldos_hist(op, sum, cfg), h, estimate_ldos_hist(op, w, cfg));
      r.max_cldos_l1 = std::max(r.max_cldos_l1, l1(c, oracle::exact_cldos_hist(spec, vectors[k], w, opts.bins)));
    }

    // Sum over the standard basis of LDOS histograms is exactly the DOS histogram.
    SpectralHistogram exact_mode = oracle::exact_dos_hist(spec, opts.bins);
    exact_mode.bins.setZero();
    for (Index i = 0; i < n; ++i) {
      exact_mode.bins += estimate_ldos_hist(op, Eigen::VectorXd::Unit(n, i), cfg).bins;
    }
    r.max_dos_l1 = std::max(r.max_dos_l1, l1(exact_mode, oracle::exact_dos_hist(spec, opts.bins)));

    const auto probe = estimate_dos_hist(op, cfg, static_cast<std::uint64_t>(t));
    r.max_dos_mass_error = std::max(r.max_dos_mass_error, std::abs(probe.bins.sum() * probe.bin_width - 1.0));
    ++r.graphs_checked;
  }
  r.passed = r.max_ldos_l1 <= opts.tolerance && r.max_cldos_l1 <= opts.tolerance &&
             r.max_dos_l1 <= opts.tolerance && r.max_dos_mass_error <= 1e-9;
  return r;
}

void print_selfcheck(std::ostream& out, const SelfCheckOptions& opts, const SelfCheckResult& r) {
  out << "graphs checked: " << r.graphs_checked << " (n <= " << opts.n_max << ", B = " << opts.bins << ")\n";
  out << "max L1 ldos:  " << r.max_ldos_l1 << '\n';
  out << "max L1 cldos: " << r.max_cldos_l1 << '\n';
  out << "max L1 dos (exact mode): " << r.max_dos_l1 << '\n';
  out << "max |dos mass - 1| (probes): " << r.max_dos_mass_error << '\n';
  out << "tolerance: " << opts.tolerance << " -> " << (r.passed ? "PASS" : "FAIL") << '\n';
}

}  // namespace adoge
