#pragma once

// Time stepping of the interface in tangent-angle / length form.
//
// Markers stay equally spaced in arclength through the tangential velocity
// T. The stiff part of the tangent-angle equation, -(|k|/s_alpha)^3 in
// Fourier space, is integrated exactly by integrating factors; the remainder
// N is advanced with second-order Adams-Bashforth. The first step uses the
// one-step (Euler) form of the same propagator.

#include <functional>
#include <string>
#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {

/// Normal velocity on the grid of a curve plus bookkeeping for diagnostics.
struct FieldSample {
  std::vector<double> V;
  int nutrient_iterations = 0;
  int stokes_iterations = 0;
  double A = 0.0;
};

using FieldSolver = std::function<FieldSample(const Curve&)>;

struct StepperOptions {
  double dt = 1e-2;
  double ssd_prefactor = 1.0;
  bool filters = true;
  FilterParams filter;
  double krasny_threshold = kDefaultKrasnyThreshold;
  int reproject_interval = 50;  // 0 disables re-projection
};

struct StepperState {
  Curve curve;            // at t_n
  Spectrum phi_hat;       // spectrum of curve.phi
  Spectrum N_hat_prev;    // N at t_{n-1}
  double s_alpha_prev = 0.0;
  double M_prev = 0.0;
  Vec2 ref_velocity_prev = Vec2::Zero();
  double t = 0.0;
  long step_index = 0;
};

/// T(a) = a M - int_0^a theta_alpha V, with M the mean of theta_alpha V.
std::vector<double> tangential_velocity(const std::vector<double>& V,
                                        const std::vector<double>& theta_alpha);

/// N = (theta_alpha T - V_alpha)/s_alpha - p H[theta_aaa]/s_alpha^3, on the grid.
std::vector<double> nonlinear_term(const std::vector<double>& V, const std::vector<double>& T,
                                   const Curve& curve, double ssd_prefactor = 1.0);

/// exp(-p |k|^3 integral) for every slot of an N-point spectrum.
std::vector<double> integrating_factors(std::size_t n, double p, double integral);

/// First step from t = 0, given the field sample on the initial curve.
StepperState bootstrap(const Curve& initial, const FieldSample& sample,
                       const StepperOptions& options);
StepperState bootstrap(const Curve& initial, const FieldSolver& solver,
                       const StepperOptions& options);

/// Two-step update from t_n to t_{n+1}; sample must belong to state.curve.
StepperState advance(const StepperState& state, const FieldSample& sample,
                     const StepperOptions& options);
StepperState step(const StepperState& state, const FieldSolver& solver,
                  const StepperOptions& options);

/// What the driver sees after each field evaluation.
struct StepRecord {
  long step_index = 0;
  double t = 0.0;
  const Curve* curve = nullptr;
  const MarkerCurve* markers = nullptr;
  GeometryStats stats;
  double shape_factor = 0.0;
  const FieldSample* sample = nullptr;
};

struct RunResult {
  bool completed = false;
  std::string failure;  // empty when completed
  long steps_taken = 0;
  Curve last_curve;     // last valid state
  double last_t = 0.0;
};

/// Runs n_steps steps, calling observer on the initial state and after each
/// step (so n_steps + 1 records). Step failures stop the loop and are
/// reported in the result rather than thrown.
RunResult run(const Curve& initial, const FieldSolver& solver, const StepperOptions& options,
              long n_steps, const std::function<void(const StepRecord&)>& observer);

}  // namespace tumorbim
