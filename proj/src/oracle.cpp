#include "adoge/oracle.hpp"

#include <Eigen/Eigenvalues>

#include "adoge/error.hpp"

namespace adoge::oracle {

ExactSpectrum exact_spectrum(const ShiftOperator& op, Index size_cap) {
  const Index n = op.size();
  if (n > size_cap) {
    throw Error(ErrorCode::SizeCapExceeded,
                "dense oracle limited to " + std::to_string(size_cap) + " nodes, got " + std::to_string(n));
  }
  ExactSpectrum spec;
  if (n == 0) return spec;
  const Eigen::MatrixXd dense = Eigen::MatrixXd(op.matrix());
  // Householder tridiagonalization followed by implicit symmetric QR with
  // eigenvector accumulation.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigensolverFailure, "dense symmetric eigensolver did not converge");
  }
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  return spec;
}

namespace {

SpectralHistogram scaled(Eigen::VectorXd raw, Index n, Index bins, HistogramKind kind) {
  SpectralHistogram h;
  h.bin_width = 2.0 / static_cast<double>(bins);
  h.bins = raw / (h.bin_width * static_cast<double>(n));
  h.kind = kind;
  h.num_nodes = n;
  return h;
}

Eigen::VectorXd clamped(const Eigen::VectorXd& x) { return x.cwiseMax(-1.0).cwiseMin(1.0); }

}  // namespace

SpectralHistogram exact_dos_hist(const ExactSpectrum& spec, Index bins) {
  const Index n = spec.eigenvalues.size();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  return scaled(bin_masses(clamped(spec.eigenvalues), ones, bins), n, bins, HistogramKind::DOS);
}

SpectralHistogram exact_ldos_hist(const ExactSpectrum& spec, const Eigen::VectorXd& v, Index bins) {
  const Index n = spec.eigenvalues.size();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length differs from spectrum size");
  const Eigen::VectorXd proj = spec.eigenvectors.transpose() * v;
  return scaled(bin_masses(clamped(spec.eigenvalues), proj.array().square(), bins), n, bins, HistogramKind::LDOS);
}

SpectralHistogram exact_cldos_hist(const ExactSpectrum& spec, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                   Index bins) {
  const Index n = spec.eigenvalues.size();
  if (v.size() != n || w.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from spectrum size");
  }
  const Eigen::VectorXd pv = spec.eigenvectors.transpose() * v;
  const Eigen::VectorXd pw = spec.eigenvectors.transpose() * w;
  return scaled(bin_masses(clamped(spec.eigenvalues), pv.cwiseProduct(pw), bins), n, bins, HistogramKind::CLDOS);
}

double exact_trace_phi(const ExactSpectrum& spec, const std::function<double(double)>& phi) {
  double total = 0.0;
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) total += phi(spec.eigenvalues[i]);
  return total;
}

double trace_of_power(const ShiftOperator& op, int k) {
  const Index n = op.size();
  if (k < 0) throw Error(ErrorCode::InvalidConfig, "trace_of_power needs k >= 0");
  if (k == 0) return static_cast<double>(n);
  SparseMatrix power = op.matrix();
  for (int i = 1; i < k; ++i) power = (power * op.matrix()).pruned();
  double tr = 0.0;
  for (Index i = 0; i < n; ++i) tr += power.coeff(i, i);
  return tr;
}

}  // namespace adoge::oracle
