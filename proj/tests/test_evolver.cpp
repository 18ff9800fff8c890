#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "test_util.hpp"
#include "tumorbim/evolver.hpp"
#include "tumorbim/linear_theory.hpp"
#include "tumorbim/stokes.hpp"

using namespace tumorbim;

namespace {

// Prescribed normal velocity depending only on marker positions.
FieldSample position_velocity(const Curve& c) {
  FieldSample s;
  for (const Vec2& p : reconstruct(c).points) s.V.push_back(0.3 + 0.2 * p.y() + 0.1 * p.x() * p.x());
  return s;
}

StepperOptions plain(double dt) {
  StepperOptions o;
  o.dt = dt;
  o.ssd_prefactor = 0.0;
  o.filters = false;
  o.reproject_interval = 0;
  return o;
}

MarkerCurve evolve(const Curve& c0, const FieldSolver& solver, const StepperOptions& o, long steps) {
  const auto res = run(c0, solver, o, steps, nullptr);
  REQUIRE(res.completed);
  return reconstruct(res.last_curve);
}

double max_distance(const MarkerCurve& a, const MarkerCurve& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, (a.points[j] - b.points[j]).norm());
  return m;
}

}  // namespace

TEST_SUITE("evolver") {
  TEST_CASE("tangential velocity") {
    const std::size_t n = 32;
    std::vector<double> V(n), ta(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) V[j] = std::cos(grid_alpha(j, n));
    const auto T = tangential_velocity(V, ta);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(T[j] + std::sin(grid_alpha(j, n))) < 1e-14);
    // Constant V on a circle gives no tangential motion.
    const auto T0 = tangential_velocity(std::vector<double>(n, 0.7), ta);
    CHECK(testutil::max_abs(T0) < 1e-14);
  }

  TEST_CASE("nonlinear term on a circle") {
    const std::size_t n = 32;
    const double R = 1.5;
    const Curve c = testutil::circle(n, R);
    std::vector<double> V(n);
    for (std::size_t j = 0; j < n; ++j) V[j] = std::cos(2.0 * grid_alpha(j, n));
    const auto T = tangential_velocity(V, std::vector<double>(n, 1.0));
    const auto N = nonlinear_term(V, T, c, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = grid_alpha(j, n);
      // (T - V_alpha)/R with T = -sin(2a)/2 and V_alpha = -2 sin(2a).
      CHECK(std::abs(N[j] - 1.5 * std::sin(2 * a) / R) < 1e-13);
    }
  }

  TEST_CASE("integrating factors") {
    const auto e = integrating_factors(16, 2.0, 0.01);
    CHECK(e[0] == 1.0);
    CHECK(std::abs(e[3] - std::exp(-0.54)) < 1e-15);
    CHECK(e[3] == e[13]);
    CHECK(std::abs(e[8] - std::exp(-2.0 * 512 * 0.01)) < 1e-18);
  }

  TEST_CASE("uniform normal velocity grows a circle exactly") {
    const double R0 = 1.0, c = 0.25, dt = 0.05;
    const FieldSolver solver = [&](const Curve& cur) {
      return FieldSample{std::vector<double>(cur.size(), c), 0, 0, 0.0};
    };
    StepperOptions o;
    o.dt = dt;
    const auto res = run(testutil::circle(32, R0), solver, o, 40, nullptr);
    REQUIRE(res.completed);
    CHECK(std::abs(res.last_curve.s_alpha - (R0 + c * 2.0)) < 1e-13);
    CHECK((res.last_curve.ref_point - Vec2(R0 + c * 2.0, 0.0)).norm() < 1e-13);
    for (double p : res.last_curve.phi) CHECK(std::abs(p - 0.5 * std::numbers::pi) < 1e-12);
  }

  TEST_CASE("bootstrap is a forward Euler step") {
    const Curve c0 = testutil::polar(32, 1.0, 2, 0.1);
    const auto sample = position_velocity(c0);
    const auto o = plain(1e-3);
    const auto s1 = bootstrap(c0, sample, o);
    CHECK(s1.step_index == 1);
    CHECK(s1.t == doctest::Approx(1e-3));
    const auto ta = InterfaceGeometry::from_curve(c0).theta_alpha;
    double M = 0.0;
    for (std::size_t j = 0; j < c0.size(); ++j) M += ta[j] * sample.V[j];
    M /= c0.size();
    CHECK(std::abs(s1.curve.s_alpha - (c0.s_alpha + 1e-3 * M)) < 1e-15);
  }

  TEST_CASE("second-order convergence in time") {
    const Curve c0 = testutil::polar(32, 1.0, 2, 0.1);
    const FieldSolver solver = position_velocity;
    const auto a = evolve(c0, solver, plain(0.04), 25);
    const auto b = evolve(c0, solver, plain(0.02), 50);
    const auto c = evolve(c0, solver, plain(0.01), 100);
    const double ratio = max_distance(a, b) / max_distance(b, c);
    CAPTURE(ratio);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }

  TEST_CASE("steady circle stays put under the full field solver") {
    const double Rs = steady_radius(0.5);
    const FieldSolver solver = [](const Curve& cur) {
      const auto sol = solve_fields(cur, {BendingKind::uniform, 2.0, 0.0, 1.0}, {0.5, 1.5});
      return FieldSample{sol.stokes.V, sol.nutrient.report.iterations,
                         sol.stokes.report.iterations, 0.5};
    };
    StepperOptions o;
    o.dt = 0.01;
    long records = 0;
    const auto res = run(testutil::circle(32, Rs), solver, o, 10,
                         [&](const StepRecord& r) {
                           CHECK(r.step_index == records);
                           ++records;
                         });
    CHECK(res.completed);
    CHECK(records == 11);
    CHECK(std::abs(res.last_curve.s_alpha - Rs) < 1e-10);
  }

  TEST_CASE("failures are reported, not thrown") {
    int calls = 0;
    const FieldSolver solver = [&](const Curve& cur) {
      if (++calls == 4) throw std::runtime_error("boom");
      return FieldSample{std::vector<double>(cur.size(), 0.1), 0, 0, 0.0};
    };
    const Curve c0 = testutil::circle(16, 1.0);
    const auto res = run(c0, solver, plain(0.1), 10, nullptr);
    CHECK_FALSE(res.completed);
    CHECK(res.failure == "boom");
    CHECK(res.steps_taken == 2);
    CHECK(res.last_curve.s_alpha > 1.0);

    const FieldSolver nan_solver = [](const Curve& cur) {
      return FieldSample{std::vector<double>(cur.size(), std::nan("")), 0, 0, 0.0};
    };
    const auto r2 = run(c0, nan_solver, plain(0.1), 3, nullptr);
    CHECK_FALSE(r2.completed);
    CHECK(r2.failure.find("non-finite") != std::string::npos);

    const FieldSolver shrink = [](const Curve& cur) {
      return FieldSample{std::vector<double>(cur.size(), -5.0), 0, 0, 0.0};
    };
    const auto r3 = run(c0, shrink, plain(0.1), 10, nullptr);
    CHECK_FALSE(r3.completed);
    CHECK(r3.failure.find("s_alpha") != std::string::npos);
  }
}
