#pragma once

// Linear stability of a perturbed circle r = R + delta cos(l a):
//   dR/dt       = I1(R)/I0(R) - A R/2
//   d(d/R)/dt   = (d/R) * bracket(R, l, A, lambda, S_inv)
// with
//   bracket = lambda A/(1+lambda) - w l S_inv (l^2 - 3/2)/(4 R^3)
//             + (1 - I1 I_{l+1}/(I0 I_l))/(1+lambda) - (2/R) I1/I0.
// The bending weight w is 2/(1+lambda) for the two-viscosity Stokes model
// solved by the nonlinear code (a mode-l expansion of the interface
// conditions gives this factor; the bending stress is resisted by both
// fluids). w = 1 is kept as an option; the two agree at lambda = 1.
// The bracket is affine in both A and S_inv, which gives closed forms for
// the marginal rigidity and the shape-preserving A.

#include <vector>

namespace tumorbim {

enum class BendingCoupling { viscosity_weighted, fixed };

struct LinearParams {
  double A = 0.0;
  double lambda = 1.0;
  double S_inv = 0.0;
  BendingCoupling coupling = BendingCoupling::viscosity_weighted;
};

struct LinearState {
  double R = 1.0;
  double delta_over_R = 0.0;
  int l = 2;
  LinearParams params;
};

double radius_rate(double R, double A);
double shape_bracket(double R, int l, const LinearParams& params);
double shape_rate(const LinearState& state);

/// Root of radius_rate in R by bisection; requires 1e-3 <= A < 1.
double steady_radius(double A);

double marginal_S_inv(int l, double A, double R, double lambda,
                      BendingCoupling coupling = BendingCoupling::viscosity_weighted);
double self_similar_A(double R, int l, double lambda, double S_inv,
                      BendingCoupling coupling = BendingCoupling::viscosity_weighted);

enum class ASchedule { constant, self_similar };

struct LinearSample {
  double t = 0.0;
  double R = 0.0;
  double delta_over_R = 0.0;
  double A = 0.0;
};

/// Classical RK4 on (R, delta/R). With the self-similar schedule A is
/// re-evaluated from R at every stage and delta/R stays fixed.
std::vector<LinearSample> integrate_linear(const LinearState& initial, ASchedule schedule,
                                           double t_final, double dt);

}  // namespace tumorbim
