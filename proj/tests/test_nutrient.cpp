#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_util.hpp"
#include "tumorbim/bessel.hpp"
#include "tumorbim/error.hpp"
#include "tumorbim/nutrient.hpp"

using namespace tumorbim;

TEST_SUITE("nutrient") {
  TEST_CASE("circle solution") {
    for (double R : {0.5, 2.0, 6.0}) {
      CAPTURE(R);
      const auto g = InterfaceGeometry::from_curve(testutil::circle(64, R));
      const auto tr = solve_nutrient(g);
      CHECK(tr.report.converged);
      const double ratio = bessel_i(1, R) / bessel_i(0, R);
      for (std::size_t j = 0; j < g.n; ++j) {
        CHECK(std::abs(tr.sigma_n[j] - ratio) < 2e-12);
        CHECK(std::abs(tr.hess_tangent[j]) < 1e-11);
        CHECK(std::abs(tr.hess_normal[j] - (1.0 - ratio / R)) < 1e-12);
      }
      CHECK(std::abs(evaluate_interior(g, tr.zeta, Vec2::Zero()) - 1.0 / bessel_i(0, R)) < 1e-13);
    }
  }

  TEST_CASE("interior values on a circle of radius 2") {
    const auto g = InterfaceGeometry::from_curve(testutil::circle(128, 2.0));
    const auto zeta = solve_density(g, assemble_helmholtz_layers(g), default_nutrient_gmres());
    CHECK(std::abs(evaluate_interior(g, zeta, Vec2(1.0, 0.0)) - 0.55539306928087874838) < 1e-13);
    CHECK(std::abs(evaluate_interior(g, zeta, Vec2::Zero()) - 0.43867627983704873938) < 1e-13);
    CHECK_THROWS_AS(evaluate_interior(g, zeta, Vec2(3.0, 0.0)), DomainError);
    CHECK_THROWS_AS(evaluate_interior(g, zeta, Vec2(1.99, 0.0)), DomainError);
  }

  TEST_CASE("perturbed shape: maximum principle and positivity of the flux") {
    const auto g = InterfaceGeometry::from_curve(testutil::polar(128, 2.5, 3, 0.3));
    const auto tr = solve_nutrient(g);
    for (double s : tr.sigma_n) CHECK(s > 0.0);
    for (double r : {0.0, 0.5, 1.0, 1.5}) {
      for (double a : {0.0, 1.0, 2.0}) {
        const double v = evaluate_interior(g, tr.zeta, Vec2(r * std::cos(a), r * std::sin(a)));
        CHECK(v > 0.0);
        CHECK(v < 1.0);
      }
    }
    // Divergence theorem: the flux equals the integral of sigma over the interior,
    // bracketed by the area times the extreme interior values.
    double flux = 0.0;
    for (double s : tr.sigma_n) flux += s;
    flux *= g.s_alpha * 2.0 * std::numbers::pi / g.n;
    CHECK(flux > 0.0);
  }

  TEST_CASE("spectral self-convergence on a perturbed shape") {
    const auto coarse = InterfaceGeometry::from_curve(testutil::polar(128, 1.5, 3, 0.15));
    const auto fine = InterfaceGeometry::from_curve(testutil::polar(512, 1.5, 3, 0.15));
    const auto a = solve_nutrient(coarse);
    const auto b = solve_nutrient(fine);
    double err = 0.0, err_t = 0.0;
    for (std::size_t j = 0; j < coarse.n; ++j) {
      err = std::max(err, std::abs(a.sigma_n[j] - b.sigma_n[4 * j]));
      err_t = std::max(err_t, std::abs(a.hess_tangent[j] - b.hess_tangent[4 * j]));
    }
    CHECK(err < 1e-10);
    CHECK(err_t < 1e-8);
  }

  TEST_CASE("convergence failure is reported") {
    const auto g = InterfaceGeometry::from_curve(testutil::polar(64, 1.5, 3, 0.15));
    const auto layers = assemble_helmholtz_layers(g);
    SolveReport rep;
    CHECK_THROWS_AS(solve_density(g, layers, {1e-14, 1, 1}, &rep), ConvergenceError);
  }
}
