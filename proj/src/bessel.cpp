#include "tumorbim/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxUnscaledArgument = 700.0;
constexpr double kSeriesLimitK = 2.0;

void check_order(int order) {
  if (order < 0 || order > kMaxBesselOrder) {
    throw DomainError("bessel_i: order " + std::to_string(order) +
                      " outside [0, 64]");
  }
}

// Power series sum_k (x/2)^{2k+n} / (k! (k+n)!).
double series_i(int order, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= half / k;
  if (term == 0.0) return 0.0;
  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term < 0.25 * kEps * sum) break;
  }
  return sum;
}

// e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(n) / x^k for large x.
double hankel_i_scaled(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 4000; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    const double magnitude = std::abs(term);
    if (magnitude > previous && magnitude < 1e-3) break;  // asymptotic tail
    sum += term;
    if (magnitude < 0.25 * kEps * std::abs(sum)) break;
    previous = magnitude;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Steed/Temme continued fraction for K_0 and K_1, valid for x >= 2.
void cf2_k01(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 0.5 * kEps) break;
  }
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

struct SmallSeries {
  double i0;
  double i1;
  double k0_regular;
  double k1_regular;
};

// Joint series for x <= 2, with psi(k+1) = -gamma + H_k.
SmallSeries small_series(double x) {
  const double q = 0.25 * x * x;
  double a = 1.0;  // q^k / (k!)^2
  double b = 1.0;  // q^k / (k! (k+1)!)
  double psi = -kEulerGamma;  // psi(k+1)
  double sum_i0 = 1.0;
  double sum_i1 = 1.0;
  double sum_k0 = psi;
  double sum_k1 = psi + (psi + 1.0);
  for (int k = 1; k < 200; ++k) {
    a *= q / (static_cast<double>(k) * k);
    b *= q / (static_cast<double>(k) * (k + 1));
    psi += 1.0 / k;
    const double psi_next = psi + 1.0 / (k + 1);
    sum_i0 += a;
    sum_i1 += b;
    sum_k0 += psi * a;
    sum_k1 += (psi + psi_next) * b;
    if (a < 0.1 * kEps && b < 0.1 * kEps) break;
  }
  return {sum_i0, 0.5 * x * sum_i1, sum_k0, -0.25 * x * sum_k1};
}

}  // namespace

double bessel_i(int order, double x) {
  check_order(order);
  if (!(x >= 0.0)) throw DomainError("bessel_i: negative argument");
  if (x > kMaxUnscaledArgument) {
    throw DomainError("bessel_i: argument above 700 overflows; use bessel_i_scaled");
  }
  return series_i(order, x);
}

double bessel_i_scaled(int order, double x) {
  check_order(order);
  if (!(x >= 0.0)) throw DomainError("bessel_i_scaled: negative argument");
  if (x <= kMaxUnscaledArgument) return series_i(order, x) * std::exp(-x);
  return hankel_i_scaled(order, x);
}

double bessel_i_ratio(int order, double x) {
  check_order(order + 1);
  if (!(x >= 0.0)) throw DomainError("bessel_i_ratio: negative argument");
  if (x == 0.0) return 0.0;
  const double num = bessel_i_scaled(order + 1, x);
  const double den = bessel_i_scaled(order, x);
  if (num > 1e-280 && den > 1e-280) return num / den;
  // Gauss continued fraction I_{n+1}/I_n = 1/(2(n+1)/x + 1/(2(n+2)/x + ...)),
  // modified Lentz.
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j < 100000; ++j) {
    const double bj = 2.0 * (order + j) / x;
    d = bj + d;
    if (d == 0.0) d = tiny;
    c = bj + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return 1.0 / f;
}

BesselIK01 bessel_ik01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_ik01: argument must be positive");
  if (x <= kSeriesLimitK) {
    const SmallSeries s = small_series(x);
    const double log_half = std::log(0.5 * x);
    return {s.i0, s.i1, s.k0_regular - s.i0 * log_half,
            1.0 / x + s.i1 * log_half + s.k1_regular};
  }
  if (x > kMaxUnscaledArgument) {
    throw DomainError("bessel_ik01: argument above 700 overflows I_0");
  }
  BesselIK01 out{};
  out.i0 = series_i(0, x);
  out.i1 = series_i(1, x);
  cf2_k01(x, out.k0, out.k1);
  return out;
}

double bessel_k(int order, double x) {
  if (order != 0 && order != 1) {
    throw DomainError("bessel_k: only orders 0 and 1 are provided");
  }
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  if (x <= kSeriesLimitK) {
    const BesselIK01 v = bessel_ik01(x);
    return order == 0 ? v.k0 : v.k1;
  }
  double k0 = 0.0;
  double k1 = 0.0;
  cf2_k01(x, k0, k1);
  return order == 0 ? k0 : k1;
}

double bessel_k0(double x) { return bessel_k(0, x); }
double bessel_k1(double x) { return bessel_k(1, x); }

double bessel_k0_regular(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_k0_regular: negative argument");
  if (x <= kSeriesLimitK) return small_series(x).k0_regular;
  return bessel_k0(x) + bessel_i(0, x) * std::log(0.5 * x);
}

double bessel_k1_regular(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_k1_regular: negative argument");
  if (x <= kSeriesLimitK) return small_series(x).k1_regular;
  return bessel_k1(x) - 1.0 / x - bessel_i(1, x) * std::log(0.5 * x);
}

}  // namespace tumorbim
