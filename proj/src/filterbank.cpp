#include "adoge/filterbank.hpp"

#include <cmath>

#include "adoge/error.hpp"

namespace adoge {

Eigen::VectorXd bin_centers(Index bins) {
  const double width = 2.0 / static_cast<double>(bins);
  Eigen::VectorXd c(bins);
  for (Index b = 0; b < bins; ++b) c[b] = -1.0 + (static_cast<double>(b) + 0.5) * width;
  return c;
}

FRFTable chebyshev_frf_table(Index K, Index bins, double lambda_min, double lambda_max) {
  if (K < 1) throw Error(ErrorCode::InvalidConfig, "Chebyshev filterbank needs K >= 1");
  if (bins < 1) throw Error(ErrorCode::InvalidConfig, "bin count must be positive");
  if (!(lambda_max > lambda_min)) throw Error(ErrorCode::InvalidConfig, "empty Chebyshev interval");

  FRFTable t;
  t.family = FrfFamily::Chebyshev;
  t.centers = bin_centers(bins);
  t.values.resize(K, bins);
  const Eigen::RowVectorXd x =
      ((2.0 * t.centers.array() - (lambda_max + lambda_min)) / (lambda_max - lambda_min)).transpose();
  t.values.row(0).setOnes();
  if (K > 1) t.values.row(1) = x;
  for (Index k = 2; k < K; ++k) {
    t.values.row(k) = 2.0 * x.cwiseProduct(t.values.row(k - 1)) - t.values.row(k - 2);
  }
  for (Index k = 0; k < K; ++k) t.orders.push_back(static_cast<int>(k + 1));
  return t;
}

FRFTable power_frf_table(Index K, Index bins, double eps_guard) {
  if (K < 2 || K % 2 != 0) throw Error(ErrorCode::InvalidConfig, "power filterbank needs even K >= 2");
  if (!(eps_guard > 0.0)) throw Error(ErrorCode::InvalidConfig, "power guard must be positive");
  if (bins < 1) throw Error(ErrorCode::InvalidConfig, "bin count must be positive");

  FRFTable t;
  t.family = FrfFamily::Power;
  t.centers = bin_centers(bins);
  t.power_guard = eps_guard;
  t.values.resize(K, bins);
  const Index half = K / 2;
  for (Index k = 1; k <= half; ++k) t.orders.push_back(static_cast<int>(k));
  for (Index k = 1; k <= half; ++k) t.orders.push_back(-static_cast<int>(k));
  for (Index r = 0; r < K; ++r) {
    const int p = t.orders[static_cast<std::size_t>(r)];
    for (Index b = 0; b < bins; ++b) {
      const double c = t.centers[b];
      t.values(r, b) = (p < 0 && std::abs(c) < eps_guard) ? 0.0 : std::pow(c, p);
    }
  }
  return t;
}

Eigen::VectorXd aggregate(const Eigen::VectorXd& bins, const FRFTable& table) {
  if (bins.size() != table.num_bins()) {
    throw Error(ErrorCode::DimensionMismatch, "histogram has " + std::to_string(bins.size()) +
                                                  " bins, filterbank expects " + std::to_string(table.num_bins()));
  }
  return table.values * bins;
}

Eigen::VectorXd aggregate(const SpectralHistogram& h, const FRFTable& table) { return aggregate(h.bins, table); }

bool guard_hit(const SpectralHistogram& h, const FRFTable& table) {
  if (table.family != FrfFamily::Power || h.size() != table.num_bins()) return false;
  for (Index b = 0; b < h.size(); ++b) {
    if (std::abs(table.centers[b]) < table.power_guard && h.bins[b] != 0.0) return true;
  }
  return false;
}

}  // namespace adoge
