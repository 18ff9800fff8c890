#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"
#include "tumorbim/gmres.hpp"

using namespace tumorbim;

TEST_SUITE("gmres") {
  TEST_CASE("identity converges in one iteration") {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(10, 10);
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(10, 1.0, 10.0);
    Eigen::VectorXd x;
    const auto rep = gmres(a, b, x);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK((x - b).norm() < 1e-14);
  }

  TEST_CASE("2x2 system") {
    Eigen::MatrixXd a(2, 2);
    a << 4, 1, 2, 3;
    Eigen::VectorXd b(2);
    b << 1, 2;
    Eigen::VectorXd x;
    const auto rep = gmres(a, b, x);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(std::abs(x(0) - 0.1) < 1e-14);
    CHECK(std::abs(x(1) - 0.6) < 1e-14);
  }

  TEST_CASE("dense nonsymmetric system against LU") {
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    const int n = 50;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = (i == j ? 5.0 : 0.0) + nd(rng) / std::sqrt(n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = nd(rng);
    const Eigen::VectorXd ref = a.partialPivLu().solve(b);
    Eigen::VectorXd x;
    const auto rep = gmres(a, b, x, {1e-13, 200, 500});
    CHECK(rep.converged);
    CHECK(rep.residual < 1e-13);
    CHECK((x - ref).norm() / ref.norm() < 1e-12);
  }

  TEST_CASE("restarts still reach tolerance") {
    const int n = 40;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 0.5;
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd x;
    const auto rep = gmres(a, b, x, {1e-12, 5, 500});
    CHECK(rep.converged);
    CHECK((a * x - b).norm() / b.norm() < 1e-12);
  }

  TEST_CASE("orthogonal matrix and stagnation reporting") {
    // Cyclic shift: GMRES needs the full Krylov space.
    const int n = 12;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) p((i + 1) % n, i) = 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(0) = 1.0;
    Eigen::VectorXd x;
    auto rep = gmres(p, b, x);
    CHECK(rep.converged);
    CHECK(rep.iterations == n);
    CHECK((p * x - b).norm() < 1e-13);

    Eigen::VectorXd y;
    rep = gmres(p, b, y, {1e-12, 4, 500});
    CHECK_FALSE(rep.converged);
    CHECK(rep.residual > 0.5);
  }

  TEST_CASE("zero right-hand side") {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(3);
    const auto rep = gmres(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)), Eigen::VectorXd(Eigen::VectorXd::Zero(3)), x);
    CHECK(rep.converged);
    CHECK(x.norm() == 0.0);
  }
}
