#include "tumorbim/linear_theory.hpp"

#include <cmath>
#include <string>

#include "tumorbim/bessel.hpp"
#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

void check_mode(int l) {
  if (l < 2 || l + 1 > kMaxBesselOrder) {
    throw DomainError("linear theory: mode l=" + std::to_string(l) + " outside [2, 63]");
  }
}

void check_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("linear theory: R must be positive");
}

// 1 - I1 I_{l+1} / (I0 I_l), from scaled ratios so large R does not overflow.
double mode_term(double R, int l) {
  return 1.0 - bessel_i_ratio(0, R) * bessel_i_ratio(l, R);
}

double bending_term(double R, int l, double lambda, BendingCoupling coupling) {
  const double weight = coupling == BendingCoupling::viscosity_weighted ? 2.0 / (1.0 + lambda) : 1.0;
  return weight * l * (l * l - 1.5) / (4.0 * R * R * R);
}

}  // namespace

double radius_rate(double R, double A) {
  check_radius(R);
  return bessel_i_ratio(0, R) - 0.5 * A * R;
}

double shape_bracket(double R, int l, const LinearParams& p) {
  check_mode(l);
  check_radius(R);
  const double inv = 1.0 / (1.0 + p.lambda);
  return p.lambda * inv * p.A - p.S_inv * bending_term(R, l, p.lambda, p.coupling) + inv * mode_term(R, l) -
         (2.0 / R) * bessel_i_ratio(0, R);
}

double shape_rate(const LinearState& s) {
  return s.delta_over_R * shape_bracket(s.R, s.l, s.params);
}

double steady_radius(double A) {
  if (!(A >= 1e-3 && A < 1.0)) {
    throw DomainError("steady_radius: A must lie in [1e-3, 1); no finite root otherwise");
  }
  // I1/I0 ~ R/2 near 0, so the rate is positive at small R; it tends to 1 - AR/2 for large R.
  double lo = 1e-6;
  double hi = 1.0;
  while (radius_rate(hi, A) > 0.0) {
    hi *= 2.0;
    if (hi > 1e7) throw DomainError("steady_radius: no sign change found");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (radius_rate(mid, A) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double marginal_S_inv(int l, double A, double R, double lambda, BendingCoupling coupling) {
  const LinearParams p{A, lambda, 0.0, coupling};
  return shape_bracket(R, l, p) / bending_term(R, l, lambda, coupling);
}

double self_similar_A(double R, int l, double lambda, double S_inv, BendingCoupling coupling) {
  const LinearParams p{0.0, lambda, S_inv, coupling};
  return -shape_bracket(R, l, p) * (1.0 + lambda) / lambda;
}

std::vector<LinearSample> integrate_linear(const LinearState& initial, ASchedule schedule,
                                           double t_final, double dt) {
  if (!(dt > 0.0)) throw DomainError("integrate_linear: dt must be positive");
  if (!(t_final >= 0.0)) throw DomainError("integrate_linear: t_final must be non-negative");
  check_mode(initial.l);
  check_radius(initial.R);
  const int l = initial.l;
  const LinearParams base = initial.params;

  auto a_of = [&](double R) {
    return schedule == ASchedule::self_similar
               ? self_similar_A(R, l, base.lambda, base.S_inv, base.coupling)
                                               : base.A;
  };
  // y = (R, delta/R)
  auto rhs = [&](double R, double q, double& dR, double& dq) {
    LinearParams p = base;
    p.A = a_of(R);
    dR = radius_rate(R, p.A);
    dq = q * shape_bracket(R, l, p);
  };

  std::vector<LinearSample> out;
  double R = initial.R;
  double q = initial.delta_over_R;
  double t = 0.0;
  out.push_back({t, R, q, a_of(R)});
  const long steps = std::lround(std::ceil(t_final / dt - 1e-9));
  for (long k = 0; k < steps; ++k) {
    const double h = std::min(dt, t_final - t);
    double k1R, k1q, k2R, k2q, k3R, k3q, k4R, k4q;
    rhs(R, q, k1R, k1q);
    rhs(R + 0.5 * h * k1R, q + 0.5 * h * k1q, k2R, k2q);
    rhs(R + 0.5 * h * k2R, q + 0.5 * h * k2q, k3R, k3q);
    rhs(R + h * k3R, q + h * k3q, k4R, k4q);
    R += h / 6.0 * (k1R + 2.0 * k2R + 2.0 * k3R + k4R);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    t = (k + 1 == steps) ? t_final : t + h;
    out.push_back({t, R, q, a_of(R)});
  }
  return out;
}

}  // namespace tumorbim
