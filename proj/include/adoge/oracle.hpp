#pragma once

#include <functional>

#include <Eigen/Core>

#include "adoge/graph.hpp"
#include "adoge/histogram.hpp"

namespace adoge::oracle {

/// Dense reference computations from a full eigendecomposition. O(n^3);
/// intended for tests and self-checks on small graphs.

inline constexpr Index kDefaultSizeCap = 2048;

struct ExactSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

/// Throws SizeCapExceeded when op.size() > size_cap.
ExactSpectrum exact_spectrum(const ShiftOperator& op, Index size_cap = kDefaultSizeCap);

SpectralHistogram exact_dos_hist(const ExactSpectrum& spec, Index bins);
SpectralHistogram exact_ldos_hist(const ExactSpectrum& spec, const Eigen::VectorXd& v, Index bins);
SpectralHistogram exact_cldos_hist(const ExactSpectrum& spec, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                   Index bins);

/// sum_i phi(lambda_i), no binning.
double exact_trace_phi(const ExactSpectrum& spec, const std::function<double(double)>& phi);

/// trace(op^k) by repeated sparse products on the identity columns.
double trace_of_power(const ShiftOperator& op, int k);

}  // namespace adoge::oracle
