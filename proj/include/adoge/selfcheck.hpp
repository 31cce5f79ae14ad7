#pragma once

#include <cstdint>
#include <ostream>

#include "adoge/graph.hpp"

namespace adoge {

struct SelfCheckOptions {
  Index n_max = 64;
  int trials = 50;
  std::uint64_t seed = 0;
  Index bins = 200;
  int vectors_per_graph = 5;
  double edge_probability = 0.3;
  double tolerance = 1e-6;
  /// Test hook: perturbs the estimator output so the check must fail.
  bool inject_fault = false;
};

struct SelfCheckResult {
  double max_ldos_l1 = 0.0;
  double max_cldos_l1 = 0.0;
  /// Exact-mode DOS (sum of basis-vector LDOS estimates) against the oracle.
  double max_dos_l1 = 0.0;
  /// |sum(h) * width - 1| of the probe DOS estimate.
  double max_dos_mass_error = 0.0;
  int graphs_checked = 0;
  bool passed = false;
};

/// Estimator-vs-oracle comparison on random Erdos-Renyi graphs with
/// n uniform in [min(8, n_max), n_max], eta_L = n and reorthogonalization.
SelfCheckResult run_selfcheck(const SelfCheckOptions& opts);

void print_selfcheck(std::ostream& out, const SelfCheckOptions& opts, const SelfCheckResult& result);

}  // namespace adoge
