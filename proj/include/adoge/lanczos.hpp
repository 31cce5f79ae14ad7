#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "adoge/error.hpp"
#include "adoge/graph.hpp"

namespace adoge {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Coefficients of the symmetric tridiagonal factor T = Q^T A Q produced by
/// the Lanczos recurrence. alpha is the diagonal, beta the (positive)
/// off-diagonal, so beta.size() == alpha.size() - 1.
template <typename Scalar>
struct LanczosFactorization {
  VectorX<Scalar> alpha;
  VectorX<Scalar> beta;
  Index steps = 0;
  Scalar start_norm = 0;
};

/// Discrete measure sum_j weights[j] * delta(x - nodes[j]).
template <typename Scalar>
struct QuadratureRule {
  VectorX<Scalar> nodes;
  VectorX<Scalar> weights;
  /// Number of nodes moved onto +-1 and the largest distance moved.
  Index clamped = 0;
  Scalar max_overshoot = 0;
};

template <typename Scalar>
struct TridiagonalEigen {
  VectorX<Scalar> eigenvalues;      // ascending
  VectorX<Scalar> first_components; // row 0 of the orthonormal eigenvector matrix
};

/// Off-diagonal threshold, relative to the unit-normalized start vector,
/// below which the recurrence is treated as having found an invariant subspace.
template <typename Scalar>
inline constexpr Scalar kBreakdownTolerance = Scalar(1e-12);

/// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating only the
/// first row of the eigenvector matrix. O(s^2) work.
template <typename Scalar>
TridiagonalEigen<Scalar> tridiagonal_eigen_first_row(const VectorX<Scalar>& alpha, const VectorX<Scalar>& beta,
                                                     int max_sweeps_per_value = 60) {
  using std::abs;
  const Index s = alpha.size();
  if (s == 0) return {};
  if (beta.size() + 1 != s) {
    throw Error(ErrorCode::DimensionMismatch, "tridiagonal off-diagonal length must be diagonal length - 1");
  }
  VectorX<Scalar> d = alpha;
  VectorX<Scalar> e = VectorX<Scalar>::Zero(s);
  e.head(s - 1) = beta;
  VectorX<Scalar> z = VectorX<Scalar>::Zero(s);
  z[0] = Scalar(1);

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar shift_sum = 0;
  Scalar tst1 = 0;
  for (Index l = 0; l < s; ++l) {
    tst1 = std::max(tst1, abs(d[l]) + abs(e[l]));
    Index m = l;
    while (m < s - 1 && abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps_per_value) {
          throw Error(ErrorCode::EigensolverFailure,
                      "tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
        }
        // Wilkinson-type shift from the leading 2x2 block.
        Scalar g = d[l];
        Scalar p = (d[l + 1] - g) / (Scalar(2) * e[l]);
        Scalar r = std::hypot(p, Scalar(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const Scalar dl1 = d[l + 1];
        Scalar h = g - d[l];
        for (Index i = l + 2; i < s; ++i) d[i] -= h;
        shift_sum += h;

        p = d[m];
        Scalar c = 1, c2 = 1, c3 = 1;
        const Scalar el1 = e[l + 1];
        Scalar sn = 0, s2 = 0;
        for (Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = sn;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = sn * r;
          sn = e[i] / r;
          c = p / r;
          p = c * d[i] - sn * g;
          d[i + 1] = h + sn * (c * g + sn * d[i]);
          const Scalar zi1 = z[i + 1];
          z[i + 1] = sn * z[i] + c * zi1;
          z[i] = c * z[i] - sn * zi1;
        }
        p = -sn * s2 * c3 * el1 * e[l] / dl1;
        e[l] = sn * p;
        d[l] = c * p;
      } while (abs(e[l]) > eps * tst1);
    }
    d[l] += shift_sum;
    e[l] = 0;
  }

  std::vector<Index> order(static_cast<std::size_t>(s));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d[a] < d[b]; });
  TridiagonalEigen<Scalar> out;
  out.eigenvalues.resize(s);
  out.first_components.resize(s);
  for (Index k = 0; k < s; ++k) {
    out.eigenvalues[k] = d[order[k]];
    out.first_components[k] = z[order[k]];
  }
  return out;
}

/// Lanczos recurrence started from start / ||start||. Stops after max_steps
/// steps, at the Krylov dimension limit n, or at breakdown. With
/// reorthogonalize set, every new basis vector is orthogonalized (twice,
/// classical Gram-Schmidt) against the whole basis.
template <typename Scalar, int Options>
LanczosFactorization<Scalar> lanczos_tridiagonalize(const Eigen::SparseMatrix<Scalar, Options>& op,
                                                    const VectorX<Scalar>& start, Index max_steps,
                                                    bool reorthogonalize = true) {
  const Index n = op.rows();
  if (start.size() != n) throw Error(ErrorCode::DimensionMismatch, "start vector length differs from operator");
  if (max_steps < 1) throw Error(ErrorCode::InvalidConfig, "Lanczos needs at least one step");
  const Scalar start_norm = start.norm();
  if (!(start_norm > 0)) throw Error(ErrorCode::ZeroStartVector, "Lanczos start vector is zero");

  const Index cap = std::min(max_steps, n);
  LanczosFactorization<Scalar> fac;
  fac.start_norm = start_norm;
  std::vector<Scalar> alpha, beta;
  alpha.reserve(static_cast<std::size_t>(cap));
  beta.reserve(static_cast<std::size_t>(cap));

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis;
  if (reorthogonalize) basis.resize(n, cap);
  VectorX<Scalar> q = start / start_norm;
  VectorX<Scalar> q_prev = VectorX<Scalar>::Zero(n);
  VectorX<Scalar> w(n);
  VectorX<Scalar> coeffs;

  for (Index j = 0; j < cap; ++j) {
    if (reorthogonalize) basis.col(j) = q;
    w.noalias() = op * q;
    const Scalar a = q.dot(w);
    alpha.push_back(a);
    w -= a * q;
    if (j > 0) w -= beta.back() * q_prev;
    if (reorthogonalize) {
      const auto active = basis.leftCols(j + 1);
      for (int pass = 0; pass < 2; ++pass) {
        coeffs.noalias() = active.transpose() * w;
        w.noalias() -= active * coeffs;
      }
    }
    if (j + 1 == cap) break;
    const Scalar b = w.norm();
    if (b <= kBreakdownTolerance<Scalar>) break;
    beta.push_back(b);
    q_prev.swap(q);
    q = w / b;
  }

  fac.steps = static_cast<Index>(alpha.size());
  fac.alpha = Eigen::Map<const VectorX<Scalar>>(alpha.data(), fac.steps);
  fac.beta = Eigen::Map<const VectorX<Scalar>>(beta.data(), fac.steps - 1);
  return fac;
}

inline LanczosFactorization<double> lanczos_tridiagonalize(const ShiftOperator& op, const Eigen::VectorXd& start,
                                                           Index max_steps, bool reorthogonalize = true) {
  return lanczos_tridiagonalize(op.matrix(), start, max_steps, reorthogonalize);
}

/// Gauss rule of the tridiagonal factor: Ritz values as nodes, squared first
/// eigenvector components as weights. Nodes are clamped into [-1, 1].
template <typename Scalar>
QuadratureRule<Scalar> tridiagonal_quadrature(const LanczosFactorization<Scalar>& fac) {
  if (fac.steps < 1 || fac.alpha.size() != fac.steps) {
    throw Error(ErrorCode::DimensionMismatch, "empty or inconsistent Lanczos factorization");
  }
  auto eig = tridiagonal_eigen_first_row<Scalar>(fac.alpha, fac.beta.head(fac.steps - 1));
  QuadratureRule<Scalar> rule;
  rule.nodes = std::move(eig.eigenvalues);
  rule.weights = eig.first_components.array().square();
  for (Index k = 0; k < rule.nodes.size(); ++k) {
    Scalar& x = rule.nodes[k];
    const Scalar over = std::abs(x) - Scalar(1);
    if (over > 0) {
      ++rule.clamped;
      rule.max_overshoot = std::max(rule.max_overshoot, over);
      x = std::clamp(x, Scalar(-1), Scalar(1));
    }
  }
  return rule;
}

/// Quadrature rule approximating the spectral measure of op seen from v / ||v||.
inline QuadratureRule<double> gauss_quadrature(const ShiftOperator& op, const Eigen::VectorXd& v, Index eta_l,
                                               bool reorthogonalize = true) {
  return tridiagonal_quadrature(lanczos_tridiagonalize(op, v, eta_l, reorthogonalize));
}

}  // namespace adoge
