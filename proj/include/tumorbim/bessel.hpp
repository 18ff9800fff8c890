#pragma once

// Modified Bessel functions of integer order for real arguments.
//
// I_n is summed from its power series (all terms positive, no cancellation)
// for x <= 700 and from the Hankel expansion of e^{-x} I_n beyond that.
// K_0, K_1 use the logarithmic series for x <= 2 and Steed's continued
// fraction (Temme's CF2) above.

namespace tumorbim {

inline constexpr int kMaxBesselOrder = 64;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// I_n(x) for 0 <= n <= 64, 0 <= x <= 700. Throws DomainError otherwise.
double bessel_i(int order, double x);

/// e^{-x} I_n(x) for any x >= 0; never overflows.
double bessel_i_scaled(int order, double x);

/// I_{n+1}(x) / I_n(x), evaluated without overflow for any x >= 0.
double bessel_i_ratio(int order, double x);

/// K_0 or K_1 for x > 0. Throws DomainError for x <= 0 or other orders.
double bessel_k(int order, double x);
double bessel_k0(double x);
double bessel_k1(double x);

/// K_0(x) + I_0(x) ln(x/2); analytic in x^2, equals -gamma at x = 0.
double bessel_k0_regular(double x);
/// K_1(x) - 1/x - I_1(x) ln(x/2); analytic and odd, vanishes at x = 0.
double bessel_k1_regular(double x);

/// I_0, I_1, K_0, K_1 at one argument, sharing the series work. x > 0.
struct BesselIK01 {
  double i0;
  double i1;
  double k0;
  double k1;
};
BesselIK01 bessel_ik01(double x);

}  // namespace tumorbim
