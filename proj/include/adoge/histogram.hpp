#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "adoge/graph.hpp"
#include "adoge/lanczos.hpp"

namespace adoge {

enum class HistogramKind { DOS, LDOS, CLDOS };

std::string_view to_string(HistogramKind kind);

/// B signed bins over [-1, 1]. Bin b covers [-1 + b*width, -1 + (b+1)*width),
/// the last bin is closed at 1.
struct SpectralHistogram {
  Eigen::VectorXd bins;
  double bin_width = 0.0;
  HistogramKind kind = HistogramKind::DOS;
  std::vector<std::string> provenance;
  Index num_nodes = 0;
  /// Ritz values that had to be clamped into [-1, 1] while estimating.
  Index clamped_nodes = 0;

  Index size() const noexcept { return bins.size(); }
  /// sum(bins) * width * n; equals ||v||^2 for LDOS and v^T v' for cLDOS.
  double total_mass() const noexcept { return bins.sum() * bin_width * static_cast<double>(num_nodes); }
};

/// Probe averages by default; Exact sums the LDOS rules of all n basis
/// vectors (n Lanczos runs), which is exact once eta_l >= n.
enum class DosMode { Probe, Exact };

struct EstimatorConfig {
  Index bins = 200;
  Index eta_l = 100;
  Index probes = 16;
  std::uint64_t seed = 0;
  bool reorthogonalize = true;
  DosMode dos_mode = DosMode::Probe;

  /// Throws InvalidConfig unless bins is even and >= 2, eta_l >= 1, probes >= 1.
  void validate() const;
};

/// Bin index of x in [-1, 1] under the left-closed rule. Values within a
/// few ulps-scale tolerance below an edge are treated as on the edge so
/// that round-off in the eigenvalue (e.g. -0.5 + 1e-16) does not change bins.
Index bin_index(double x, Index bins);

/// Sum of quadrature weights per bin; no 1/width or 1/n scaling.
Eigen::VectorXd bin_quadrature(const QuadratureRule<double>& rule, Index bins);
Eigen::VectorXd bin_masses(const Eigen::VectorXd& points, const Eigen::VectorXd& masses, Index bins);

SpectralHistogram estimate_ldos_hist(const ShiftOperator& op, const AttributeVector& v, const EstimatorConfig& cfg);
SpectralHistogram estimate_ldos_hist(const ShiftOperator& op, const Eigen::VectorXd& v, const EstimatorConfig& cfg);

/// Dispatches on cfg.dos_mode. Probe mode: stochastic estimate from cfg.probes unit-normalized Gaussian probes. The
/// probe stream is keyed by (cfg.seed, graph_index, probe index).
SpectralHistogram estimate_dos_hist(const ShiftOperator& op, const EstimatorConfig& cfg, std::uint64_t graph_index = 0);

/// Same estimator over caller-supplied probe columns (each normalized here).
SpectralHistogram estimate_dos_hist_with_probes(const ShiftOperator& op, const Eigen::MatrixXd& probes,
                                                const EstimatorConfig& cfg);

/// Sum over the standard basis of LDOS rules, divided by n * width.
SpectralHistogram estimate_dos_hist_exact(const ShiftOperator& op, const EstimatorConfig& cfg);

/// The probe matrix (n x cfg.probes) estimate_dos_hist draws.
Eigen::MatrixXd dos_probes(Index n, const EstimatorConfig& cfg, std::uint64_t graph_index);

/// [h(v + v') - (h(v) + h(v'))] / 2 bin-wise.
SpectralHistogram combine_cldos(const SpectralHistogram& sum, const SpectralHistogram& h_v,
                                const SpectralHistogram& h_w);

SpectralHistogram estimate_cldos_hist(const ShiftOperator& op, const AttributeVector& v, const AttributeVector& w,
                                      const EstimatorConfig& cfg);

}  // namespace adoge
