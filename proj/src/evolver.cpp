#include "tumorbim/evolver.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

struct StepTerms {
  Spectrum N_hat;
  double M = 0.0;
  Vec2 ref_velocity = Vec2::Zero();
};

StepTerms evaluate_terms(const Curve& curve, const FieldSample& sample, double p) {
  const std::size_t n = curve.size();
  if (sample.V.size() != n) throw DomainError("stepper: field sample does not match the grid");
  for (double v : sample.V) {
    if (!std::isfinite(v)) throw Error("stepper: non-finite normal velocity");
  }
  std::vector<double> theta_alpha = spectral_derivative(curve.phi);
  for (double& v : theta_alpha) v += 1.0;
  std::vector<double> product(n);
  for (std::size_t j = 0; j < n; ++j) product[j] = theta_alpha[j] * sample.V[j];

  StepTerms out;
  out.M = periodic_mean(product);
  const std::vector<double> T = tangential_velocity(sample.V, theta_alpha);
  out.N_hat = fft(nonlinear_term(sample.V, T, curve, p));
  // At alpha = 0 the tangential velocity vanishes, so the marker moves with V n.
  const double theta0 = curve.phi[0];
  out.ref_velocity = sample.V[0] * Vec2(std::sin(theta0), -std::cos(theta0));
  return out;
}

double inverse_cube_integral(double s0, double s1, double dt) {
  return 0.5 * dt * (1.0 / (s0 * s0 * s0) + 1.0 / (s1 * s1 * s1));
}

void check_metric(double s_alpha, long step) {
  if (!(s_alpha > 0.0) || !std::isfinite(s_alpha)) {
    throw Error("stepper: s_alpha became non-positive at step " + std::to_string(step) +
                " (blow-up or under-resolution)");
  }
}

void finish_curve(StepperState& state, Spectrum phi_hat, const StepperOptions& options) {
  if (options.filters) {
    phi_hat = krasny_filter(fourier_filter(phi_hat, options.filter), options.krasny_threshold);
  }
  state.curve.phi = ifft(phi_hat);
  for (double v : state.curve.phi) {
    if (!std::isfinite(v)) throw Error("stepper: non-finite tangent angle");
  }
  state.phi_hat = std::move(phi_hat);
  if (options.reproject_interval > 0 && state.step_index % options.reproject_interval == 0) {
    state.curve = from_markers(reconstruct(state.curve));
    state.phi_hat = fft(state.curve.phi);
  }
}

}  // namespace

std::vector<double> tangential_velocity(const std::vector<double>& V,
                                        const std::vector<double>& theta_alpha) {
  std::vector<double> product(V.size());
  for (std::size_t j = 0; j < V.size(); ++j) product[j] = theta_alpha[j] * V[j];
  std::vector<double> T = mean_free_antiderivative(product);
  for (double& v : T) v = -v;
  return T;
}

std::vector<double> nonlinear_term(const std::vector<double>& V, const std::vector<double>& T,
                                   const Curve& curve, double ssd_prefactor) {
  const std::size_t n = curve.size();
  const Spectrum phi_hat = fft(curve.phi);
  const auto V_alpha = spectral_derivative(V);
  const auto phi_alpha = ifft(derivative(phi_hat));
  // Subtracting the stiff term -p(|k|/s)^3 phi_hat means adding it back with a plus sign.
  Spectrum stiff(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = std::abs(static_cast<double>(wavenumber(j, n))) / curve.s_alpha;
    stiff[j] = ssd_prefactor * k * k * k * phi_hat[j];
  }
  const auto stiff_grid = ifft(stiff);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = ((1.0 + phi_alpha[j]) * T[j] - V_alpha[j]) / curve.s_alpha + stiff_grid[j];
  }
  return out;
}

std::vector<double> integrating_factors(std::size_t n, double p, double integral) {
  std::vector<double> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = std::abs(static_cast<double>(wavenumber(j, n)));
    e[j] = std::exp(-p * k * k * k * integral);
  }
  return e;
}

StepperState bootstrap(const Curve& initial, const FieldSample& sample,
                       const StepperOptions& options) {
  initial.validate();
  if (!(options.dt > 0.0)) throw DomainError("stepper: dt must be positive");
  const StepTerms terms = evaluate_terms(initial, sample, options.ssd_prefactor);
  const double s0 = initial.s_alpha;
  const double s1 = s0 + options.dt * terms.M;
  check_metric(s1, 1);

  const std::size_t n = initial.size();
  const Spectrum phi_hat = fft(initial.phi);
  const auto e = integrating_factors(n, options.ssd_prefactor,
                                     inverse_cube_integral(s0, s1, options.dt));
  Spectrum next(n);
  for (std::size_t j = 0; j < n; ++j) next[j] = e[j] * (phi_hat[j] + options.dt * terms.N_hat[j]);

  StepperState state;
  state.curve.s_alpha = s1;
  state.curve.ref_point = initial.ref_point + options.dt * terms.ref_velocity;
  state.N_hat_prev = terms.N_hat;
  state.s_alpha_prev = s0;
  state.M_prev = terms.M;
  state.ref_velocity_prev = terms.ref_velocity;
  state.t = options.dt;
  state.step_index = 1;
  finish_curve(state, std::move(next), options);
  return state;
}

StepperState bootstrap(const Curve& initial, const FieldSolver& solver,
                       const StepperOptions& options) {
  return bootstrap(initial, solver(initial), options);
}

StepperState advance(const StepperState& state, const FieldSample& sample,
                     const StepperOptions& options) {
  const double dt = options.dt;
  const StepTerms terms = evaluate_terms(state.curve, sample, options.ssd_prefactor);
  const double s_prev = state.s_alpha_prev;
  const double s_now = state.curve.s_alpha;
  const double s_next = s_now + 0.5 * dt * (3.0 * terms.M - state.M_prev);
  check_metric(s_next, state.step_index + 1);

  const std::size_t n = state.curve.size();
  const double p = options.ssd_prefactor;
  const double i1 = inverse_cube_integral(s_now, s_next, dt);
  const double i0 = inverse_cube_integral(s_prev, s_now, dt);
  const auto e1 = integrating_factors(n, p, i1);
  const auto e2 = integrating_factors(n, p, i0 + i1);
  Spectrum next(n);
  for (std::size_t j = 0; j < n; ++j) {
    next[j] = e1[j] * state.phi_hat[j] +
              0.5 * dt * (3.0 * e1[j] * terms.N_hat[j] - e2[j] * state.N_hat_prev[j]);
  }

  StepperState out;
  out.curve.s_alpha = s_next;
  out.curve.ref_point = state.curve.ref_point +
                        0.5 * dt * (3.0 * terms.ref_velocity - state.ref_velocity_prev);
  out.N_hat_prev = terms.N_hat;
  out.s_alpha_prev = s_now;
  out.M_prev = terms.M;
  out.ref_velocity_prev = terms.ref_velocity;
  out.t = state.t + dt;
  out.step_index = state.step_index + 1;
  finish_curve(out, std::move(next), options);
  return out;
}

StepperState step(const StepperState& state, const FieldSolver& solver,
                  const StepperOptions& options) {
  return advance(state, solver(state.curve), options);
}

RunResult run(const Curve& initial, const FieldSolver& solver, const StepperOptions& options,
              long n_steps, const std::function<void(const StepRecord&)>& observer) {
  RunResult result;
  result.last_curve = initial;
  StepperState state;
  state.curve = initial;
  state.phi_hat = fft(initial.phi);

  auto report = [&](const StepperState& s, const FieldSample& sample) {
    const MarkerCurve markers = reconstruct(s.curve);
    StepRecord rec;
    rec.step_index = s.step_index;
    rec.t = s.t;
    rec.curve = &s.curve;
    rec.markers = &markers;
    rec.stats = geometry_stats(markers);
    rec.shape_factor = shape_factor(markers);
    rec.sample = &sample;
    if (observer) observer(rec);
  };

  try {
    for (long k = 0;; ++k) {
      const FieldSample sample = solver(state.curve);
      report(state, sample);
      result.last_curve = state.curve;
      result.last_t = state.t;
      result.steps_taken = k;
      if (k == n_steps) break;
      state = k == 0 ? bootstrap(state.curve, sample, options) : advance(state, sample, options);
    }
    result.completed = true;
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  return result;
}

}  // namespace tumorbim
