#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_util.hpp"
#include "tumorbim/membrane.hpp"
#include "tumorbim/spectral.hpp"

using namespace tumorbim;

namespace {

constexpr double kPi = std::numbers::pi;

BendingModel weakening(double C, double lambda_c) {
  return {BendingKind::weakening, 1.0, C, lambda_c};
}

// E = 1/2 oint nu(kappa) kappa^2 ds for a closed marker curve.
double energy(const MarkerCurve& m, const BendingModel& model) {
  const Curve c = from_markers(m);
  const auto kappa = curvature(c);
  double e = 0.0;
  for (double k : kappa) e += nu_and_derivatives(k, model).nu * k * k;
  return 0.5 * e * c.s_alpha * 2.0 * kPi / kappa.size();
}

// Normal displacement field used for the variation.
double bump(double a) { return 0.3 * std::cos(2 * a + 0.4) + 0.2 * std::sin(5 * a) + 0.1; }

}  // namespace

TEST_SUITE("membrane") {
  TEST_CASE("nu derivatives by finite differences") {
    const BendingModel m = weakening(0.95, 1.25);
    const double e = 1e-5;
    for (double k : {-0.7, 0.1, 0.5, 1.3}) {
      const auto n0 = nu_and_derivatives(k, m);
      const auto np = nu_and_derivatives(k + e, m);
      const auto nm = nu_and_derivatives(k - e, m);
      CHECK(std::abs((np.nu - nm.nu) / (2 * e) - n0.d1) < 1e-8);
      CHECK(std::abs((np.d1 - nm.d1) / (2 * e) - n0.d2) < 1e-8);
      CHECK(std::abs((np.d2 - nm.d2) / (2 * e) - n0.d3) < 1e-7);
    }
    CHECK(std::abs(nu_and_derivatives(0.0, m).nu - 1.0) < 1e-15);
    CHECK(nu_and_derivatives(5.0, m).nu < 0.06);
  }

  TEST_CASE("circle force") {
    const Curve c = testutil::circle(64, 2.0);
    for (double f : bending_force(c, {})) CHECK(std::abs(f - 0.0625) < 1e-14);
    const BendingModel w = weakening(0.5, 1.0);
    const auto nu = nu_and_derivatives(0.5, w);
    const double expected = (0.5 * nu.d1 * 0.5 + 0.5 * nu.nu) * 0.125;
    for (double f : bending_force(c, w)) CHECK(std::abs(f - expected) < 1e-14);
  }

  TEST_CASE("force is the variational derivative of the bending energy") {
    const std::size_t n = 128;
    const auto base = polar_markers(n, 1.0, {{2, 0.1, true}, {3, 0.05, false}});
    const Curve c = from_markers(base);
    const auto g = InterfaceGeometry::from_curve(c);
    for (const BendingModel& model : {BendingModel{}, weakening(0.95, 1.25), weakening(0.5, 0.8)}) {
      const auto f = bending_force(c, model);
      double predicted = 0.0;
      for (std::size_t j = 0; j < n; ++j) predicted -= f[j] * bump(grid_alpha(j, n));
      predicted *= c.s_alpha * 2.0 * kPi / n;

      auto displaced = [&](double eps) {
        MarkerCurve m = reconstruct(c);
        for (std::size_t j = 0; j < n; ++j) m.points[j] += eps * bump(grid_alpha(j, n)) * g.normal[j];
        return energy(m, model);
      };
      const double e = 1e-3;
      const double fd = (8.0 * (displaced(e) - displaced(-e)) - (displaced(2 * e) - displaced(-2 * e))) / (12 * e);
      CAPTURE(predicted);
      CAPTURE(fd);
      CHECK(std::abs(fd - predicted) < 1e-7 * std::max(1.0, std::abs(predicted)));
    }
  }

  TEST_CASE("C = 0 reproduces uniform rigidity bitwise") {
    const Curve c = testutil::polar(64, 1.3, 4, 0.1);
    const auto u = bending_force(c, {});
    const auto w = bending_force(c, weakening(0.0, 1.7));
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(u[j] == w[j]);
  }

  TEST_CASE("force is equivariant under a shift of the starting marker") {
    const std::size_t n = 64;
    const auto m = reconstruct(from_markers(polar_markers(n, 1.0, {{3, 0.05, true}})));
    MarkerCurve shifted;
    for (std::size_t j = 0; j < n; ++j) shifted.points.push_back(m.points[(j + 8) % n]);
    const auto a = bending_force(from_markers(m), weakening(0.9, 1.1));
    const auto b = bending_force(from_markers(shifted), weakening(0.9, 1.1));
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a[(j + 8) % n] - b[j]) < 1e-9);
  }

  TEST_CASE("validation") {
    CHECK_THROWS(weakening(1.0, 1.0).validate());
    CHECK_THROWS(weakening(0.5, 0.0).validate());
    CHECK_THROWS((BendingModel{BendingKind::uniform, -1.0, 0.0, 1.0}).validate());
    CHECK_NOTHROW(weakening(0.95, 1.25).validate());
  }
}
