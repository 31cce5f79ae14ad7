#include "adoge/histogram.hpp"

#include <cmath>
#include <random>

#include "adoge/error.hpp"

namespace adoge {

std::string_view to_string(HistogramKind kind) {
  switch (kind) {
    case HistogramKind::DOS: return "dos";
    case HistogramKind::LDOS: return "ldos";
    case HistogramKind::CLDOS: return "cldos";
  }
  return "unknown";
}

void EstimatorConfig::validate() const {
  if (bins < 2 || bins % 2 != 0) {
    throw Error(ErrorCode::InvalidConfig, "bin count must be even and >= 2, got " + std::to_string(bins));
  }
  if (eta_l < 1) throw Error(ErrorCode::InvalidConfig, "eta_L must be >= 1");
  if (probes < 1) throw Error(ErrorCode::InvalidConfig, "probe count must be >= 1");
}

namespace {

constexpr double kEdgeSnap = 1e-8;  // in units of bins

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SpectralHistogram empty_hist(Index n, const EstimatorConfig& cfg, HistogramKind kind) {
  SpectralHistogram h;
  h.bins = Eigen::VectorXd::Zero(cfg.bins);
  h.bin_width = 2.0 / static_cast<double>(cfg.bins);
  h.kind = kind;
  h.num_nodes = n;
  return h;
}

}  // namespace

Index bin_index(double x, Index bins) {
  const double t = (x + 1.0) * static_cast<double>(bins) / 2.0;
  const auto b = static_cast<Index>(std::floor(t + kEdgeSnap));
  return std::clamp<Index>(b, 0, bins - 1);
}

Eigen::VectorXd bin_masses(const Eigen::VectorXd& points, const Eigen::VectorXd& masses, Index bins) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(bins);
  for (Index k = 0; k < points.size(); ++k) out[bin_index(points[k], bins)] += masses[k];
  return out;
}

Eigen::VectorXd bin_quadrature(const QuadratureRule<double>& rule, Index bins) {
  return bin_masses(rule.nodes, rule.weights, bins);
}

SpectralHistogram estimate_ldos_hist(const ShiftOperator& op, const Eigen::VectorXd& v, const EstimatorConfig& cfg) {
  cfg.validate();
  const Index n = op.size();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "attribute vector length differs from node count");
  auto h = empty_hist(n, cfg, HistogramKind::LDOS);
  const double norm_sq = v.squaredNorm();
  if (norm_sq == 0.0) return h;

  const auto rule = gauss_quadrature(op, v, cfg.eta_l, cfg.reorthogonalize);
  h.clamped_nodes = rule.clamped;
  h.bins = bin_quadrature(rule, cfg.bins) * (norm_sq / (h.bin_width * static_cast<double>(n)));
  return h;
}

SpectralHistogram estimate_ldos_hist(const ShiftOperator& op, const AttributeVector& v, const EstimatorConfig& cfg) {
  auto h = estimate_ldos_hist(op, v.values, cfg);
  h.provenance = {v.label};
  return h;
}

Eigen::MatrixXd dos_probes(Index n, const EstimatorConfig& cfg, std::uint64_t graph_index) {
  Eigen::MatrixXd z(n, cfg.probes);
  const std::uint64_t graph_key = splitmix64(splitmix64(cfg.seed) ^ graph_index);
  for (Index p = 0; p < cfg.probes; ++p) {
    std::mt19937_64 rng(splitmix64(graph_key ^ splitmix64(static_cast<std::uint64_t>(p))));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index i = 0; i < n; ++i) z(i, p) = normal(rng);
  }
  return z;
}

SpectralHistogram estimate_dos_hist_with_probes(const ShiftOperator& op, const Eigen::MatrixXd& probes,
                                                const EstimatorConfig& cfg) {
  cfg.validate();
  const Index n = op.size();
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "DOS of an empty graph is undefined");
  if (probes.rows() != n || probes.cols() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "probe matrix must be n x (>= 1)");
  }
  auto h = empty_hist(n, cfg, HistogramKind::DOS);
  for (Index p = 0; p < probes.cols(); ++p) {
    const auto rule = gauss_quadrature(op, probes.col(p), cfg.eta_l, cfg.reorthogonalize);
    h.clamped_nodes += rule.clamped;
    h.bins += bin_quadrature(rule, cfg.bins);
  }
  h.bins /= static_cast<double>(probes.cols()) * h.bin_width;
  return h;
}

SpectralHistogram estimate_dos_hist(const ShiftOperator& op, const EstimatorConfig& cfg, std::uint64_t graph_index) {
  cfg.validate();
  if (cfg.dos_mode == DosMode::Exact) return estimate_dos_hist_exact(op, cfg);
  return estimate_dos_hist_with_probes(op, dos_probes(op.size(), cfg, graph_index), cfg);
}

SpectralHistogram estimate_dos_hist_exact(const ShiftOperator& op, const EstimatorConfig& cfg) {
  cfg.validate();
  const Index n = op.size();
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "DOS of an empty graph is undefined");
  auto h = empty_hist(n, cfg, HistogramKind::DOS);
  for (Index i = 0; i < n; ++i) {
    const auto rule = gauss_quadrature(op, Eigen::VectorXd::Unit(n, i), cfg.eta_l, cfg.reorthogonalize);
    h.clamped_nodes += rule.clamped;
    h.bins += bin_quadrature(rule, cfg.bins);
  }
  h.bins /= static_cast<double>(n) * h.bin_width;
  return h;
}

SpectralHistogram combine_cldos(const SpectralHistogram& sum, const SpectralHistogram& h_v,
                                const SpectralHistogram& h_w) {
  if (sum.size() != h_v.size() || sum.size() != h_w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cLDOS inputs have different bin counts");
  }
  SpectralHistogram h;
  // Adding the two singles first keeps cLDOS(v, v) == LDOS(v) bit-exact.
  h.bins = (sum.bins - (h_v.bins + h_w.bins)) / 2.0;
  h.bin_width = sum.bin_width;
  h.kind = HistogramKind::CLDOS;
  h.num_nodes = sum.num_nodes;
  h.clamped_nodes = sum.clamped_nodes + h_v.clamped_nodes + h_w.clamped_nodes;
  h.provenance.insert(h.provenance.end(), h_v.provenance.begin(), h_v.provenance.end());
  h.provenance.insert(h.provenance.end(), h_w.provenance.begin(), h_w.provenance.end());
  return h;
}

SpectralHistogram estimate_cldos_hist(const ShiftOperator& op, const AttributeVector& v, const AttributeVector& w,
                                      const EstimatorConfig& cfg) {
  if (v.values.size() != w.values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cLDOS vectors have different lengths");
  }
  const Eigen::VectorXd vw = v.values + w.values;
  return combine_cldos(estimate_ldos_hist(op, vw, cfg), estimate_ldos_hist(op, v, cfg),
                       estimate_ldos_hist(op, w, cfg));
}

}  // namespace adoge
