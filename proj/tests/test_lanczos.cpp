#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "adoge/error.hpp"
#include "adoge/lanczos.hpp"
#include "adoge/oracle.hpp"
#include "adoge/synthetic.hpp"

using namespace adoge;

namespace {

ShiftOperator k2() { return normalize_adjacency(build_graph(2, {{0, 1, 1.0}})); }

// Dense reference for a symmetric tridiagonal matrix.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense_tridiagonal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Index s = a.size();
  Eigen::MatrixXd t = a.asDiagonal();
  for (Index i = 0; i + 1 < s; ++i) t(i, i + 1) = t(i + 1, i) = b[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t);
}

}  // namespace

TEST_CASE("lanczos: two steps on the single-edge graph") {
  const auto fac = lanczos_tridiagonalize(k2(), Eigen::Vector2d(1, 0), 2);
  CHECK(fac.steps == 2);
  CHECK(fac.alpha[0] == doctest::Approx(0.0));
  CHECK(fac.alpha[1] == doctest::Approx(0.0));
  REQUIRE(fac.beta.size() == 1);
  CHECK(fac.beta[0] == doctest::Approx(1.0));
  CHECK(fac.start_norm == 1.0);
}

TEST_CASE("lanczos: eigenvector start breaks down after one step") {
  const Eigen::Vector2d u = Eigen::Vector2d(1, 1) / std::sqrt(2.0);
  const auto fac = lanczos_tridiagonalize(k2(), u, 10);
  CHECK(fac.steps == 1);
  CHECK(fac.alpha[0] == doctest::Approx(1.0));
  CHECK(fac.beta.size() == 0);
}

TEST_CASE("lanczos: zero start vector") {
  CHECK_THROWS_AS(lanczos_tridiagonalize(k2(), Eigen::Vector2d::Zero(), 2), Error);
  try {
    lanczos_tridiagonalize(k2(), Eigen::Vector2d::Zero(), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroStartVector);
  }
}

TEST_CASE("lanczos: start_norm records the unnormalized length") {
  const auto fac = lanczos_tridiagonalize(k2(), Eigen::Vector2d(3, 4), 2);
  CHECK(fac.start_norm == doctest::Approx(5.0));
}

TEST_CASE("tridiagonal_quadrature: hand cases") {
  SUBCASE("[[0,1],[1,0]]") {
    LanczosFactorization<double> fac{Eigen::Vector2d(0, 0), Eigen::VectorXd::Constant(1, 1.0), 2, 1.0};
    const auto rule = tridiagonal_quadrature(fac);
    CHECK(rule.nodes[0] == doctest::Approx(-1.0));
    CHECK(rule.nodes[1] == doctest::Approx(1.0));
    CHECK(rule.weights[0] == doctest::Approx(0.5));
    CHECK(rule.weights[1] == doctest::Approx(0.5));
  }
  SUBCASE("1x1") {
    LanczosFactorization<double> fac{Eigen::VectorXd::Constant(1, 0.3), Eigen::VectorXd(0), 1, 1.0};
    const auto rule = tridiagonal_quadrature(fac);
    CHECK(rule.nodes.size() == 1);
    CHECK(rule.nodes[0] == 0.3);
    CHECK(rule.weights[0] == 1.0);
  }
  SUBCASE("overshoot is clamped and counted") {
    LanczosFactorization<double> fac{Eigen::VectorXd::Constant(1, 1.0 + 1e-9), Eigen::VectorXd(0), 1, 1.0};
    const auto rule = tridiagonal_quadrature(fac);
    CHECK(rule.nodes[0] == 1.0);
    CHECK(rule.clamped == 1);
    CHECK(rule.max_overshoot == doctest::Approx(1e-9).epsilon(1e-3));
  }
}

TEST_CASE("tridiagonal QL agrees with a dense symmetric eigensolver") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> diag(-1.0, 1.0), off(0.01, 1.0);
  for (int t = 0; t < 40; ++t) {
    const Index s = 1 + static_cast<Index>(rng() % 60);
    Eigen::VectorXd a(s), b(std::max<Index>(s - 1, 0));
    for (Index i = 0; i < s; ++i) a[i] = diag(rng);
    for (Index i = 0; i + 1 < s; ++i) b[i] = off(rng);
    const auto ours = tridiagonal_eigen_first_row<double>(a, b);
    const auto ref = dense_tridiagonal(a, b);
    CHECK((ours.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd ref_first = ref.eigenvectors().row(0).transpose().cwiseAbs();
    CHECK((ours.first_components.cwiseAbs() - ref_first).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(ours.first_components.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("tridiagonal QL handles zero off-diagonals and repeated values") {
  const Eigen::Vector4d a(0.5, 0.5, -0.2, 0.5);
  const Eigen::Vector3d b(0.0, 0.3, 0.0);
  const auto ours = tridiagonal_eigen_first_row<double>(a, b);
  const auto ref = dense_tridiagonal(a, b);
  CHECK((ours.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-14);
  // Decoupled first block: all weight on the eigenvalue 0.5 of the first row.
  CHECK(ours.first_components.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("gauss_quadrature: closed-form rules") {
  SUBCASE("single edge from e_0") {
    const auto rule = gauss_quadrature(k2(), Eigen::Vector2d(1, 0), 2);
    REQUIRE(rule.nodes.size() == 2);
    CHECK(rule.nodes[0] == doctest::Approx(-1.0));
    CHECK(rule.nodes[1] == doctest::Approx(1.0));
    CHECK(rule.weights[0] == doctest::Approx(0.5));
    CHECK(rule.weights[1] == doctest::Approx(0.5));
  }
  SUBCASE("single edge from the lambda = 1 eigenvector") {
    const auto rule = gauss_quadrature(k2(), Eigen::Vector2d(1, 1) / std::sqrt(2.0), 2);
    REQUIRE(rule.nodes.size() == 1);
    CHECK(rule.nodes[0] == doctest::Approx(1.0));
    CHECK(rule.weights[0] == doctest::Approx(1.0));
  }
  SUBCASE("path of three from the center matches the dense oracle") {
    const auto op = normalize_adjacency(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
    const Eigen::Vector3d e1(0, 1, 0);
    const auto rule = gauss_quadrature(op, e1, 3);
    const auto spec = oracle::exact_spectrum(op);
    const Eigen::VectorXd mass = (spec.eigenvectors.transpose() * e1).array().square();
    // Oracle: eigenvalues (-1, 0, 1) with center masses (1/2, 0, 1/2).
    CHECK(mass[1] == doctest::Approx(0.0));
    double matched = 0.0;
    for (Index j = 0; j < rule.nodes.size(); ++j) {
      for (Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(rule.nodes[j] - spec.eigenvalues[i]) < 1e-10) {
          CHECK(rule.weights[j] == doctest::Approx(mass[i]).epsilon(1e-10));
          matched += rule.weights[j];
        }
      }
    }
    CHECK(matched == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("gauss_quadrature: weights sum to one and moments match") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const Index n = 4 + static_cast<Index>(rng() % 60);
    const auto g = synthetic::erdos_renyi(n, 0.25, rng);
    const auto op = normalize_adjacency(g);
    const Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
    const Index eta = 1 + static_cast<Index>(rng() % 12);
    const auto rule = gauss_quadrature(op, v, eta);
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((rule.weights.array() >= 0.0).all());

    // Gauss exactness: moments 0..2s-1 by explicit sparse powers.
    const Index s = rule.nodes.size();
    Eigen::VectorXd power_v = v.normalized();
    const Eigen::VectorXd vhat = v.normalized();
    for (Index k = 0; k < 2 * s; ++k) {
      const double exact = vhat.dot(power_v);
      const double quad = (rule.weights.array() * rule.nodes.array().pow(static_cast<double>(k))).sum();
      CHECK(std::abs(quad - exact) < 1e-8);
      power_v = op.matrix() * power_v;
    }
  }
}

TEST_CASE("lanczos without reorthogonalization still matches low moments") {
  std::mt19937_64 rng(9);
  const auto op = normalize_adjacency(synthetic::erdos_renyi(50, 0.2, rng));
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(50);
  const auto rule = gauss_quadrature(op, v, 8, false);
  Eigen::VectorXd pv = v.normalized();
  for (int k = 0; k < 6; ++k) {
    const double quad = (rule.weights.array() * rule.nodes.array().pow(k)).sum();
    CHECK(std::abs(quad - v.normalized().dot(pv)) < 1e-8);
    pv = op.matrix() * pv;
  }
}
