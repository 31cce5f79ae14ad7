#pragma once

#include <vector>

#include <Eigen/Core>

#include "adoge/histogram.hpp"

namespace adoge {

enum class FrfFamily { Chebyshev, Power };

/// Frequency response functions sampled at histogram bin centers:
/// values(k, b) = phi_k(center_b). Built once per configuration and shared.
struct FRFTable {
  FrfFamily family = FrfFamily::Chebyshev;
  Eigen::MatrixXd values;   // K x B
  Eigen::VectorXd centers;  // B
  /// Exponent of each row for the power family; Chebyshev order (1-based) otherwise.
  std::vector<int> orders;
  double power_guard = 0.0;

  Index num_functions() const noexcept { return values.rows(); }
  Index num_bins() const noexcept { return values.cols(); }
};

Eigen::VectorXd bin_centers(Index bins);

/// phi_1 = 1, phi_2 = x, phi_k = 2 x phi_{k-1} - phi_{k-2}, with
/// x = (2 lambda - (lambda_max + lambda_min)) / (lambda_max - lambda_min).
/// On the default interval [-1, 1] row k is T_{k-1}.
FRFTable chebyshev_frf_table(Index K, Index bins, double lambda_min = -1.0, double lambda_max = 1.0);

/// Rows lambda^1..lambda^{K/2}, then lambda^{-1}..lambda^{-K/2}. Negative
/// powers are zero at centers with |lambda| < eps_guard.
FRFTable power_frf_table(Index K, Index bins, double eps_guard = 0.05);

/// g_k = sum_b h_b * phi_k(center_b). Throws DimensionMismatch.
Eigen::VectorXd aggregate(const SpectralHistogram& h, const FRFTable& table);
Eigen::VectorXd aggregate(const Eigen::VectorXd& bins, const FRFTable& table);

/// True when h carries nonzero mass in a bin the power guard zeroed.
bool guard_hit(const SpectralHistogram& h, const FRFTable& table);

}  // namespace adoge
