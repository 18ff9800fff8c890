#include "tumorbim/stokes.hpp"

#include <string>

#include "tumorbim/error.hpp"

namespace tumorbim {

void PhysParams::validate() const {
  if (!(A >= 0.0)) throw DomainError("params: A must be non-negative");
  if (!(lambda > 0.0)) throw DomainError("params: lambda must be positive");
}

std::vector<Vec2> stress_jump(const InterfaceGeometry& g, const NutrientTrace& nutrient,
                              std::span<const double> bending_force, double S_inv) {
  std::vector<Vec2> out(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double normal = -S_inv * bending_force[j] + 2.0 * nutrient.hess_normal[j] - 2.0;
    out[j] = normal * g.normal[j] + 2.0 * nutrient.hess_tangent[j] * g.tangent[j];
  }
  return out;
}

std::vector<Vec2> slip_velocity(const InterfaceGeometry& g, const NutrientTrace& nutrient,
                                const PhysParams& params) {
  std::vector<Vec2> out(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    out[j] = nutrient.sigma_n[j] * g.normal[j] - 0.5 * params.A * g.x[j];
  }
  return out;
}

std::vector<Vec2> force_term(const StokesLayers& layers, std::span<const Vec2> jump,
                             std::span<const Vec2> slip) {
  const Eigen::VectorXd h = interleave(slip);
  const Eigen::VectorXd f = -2.0 * (layers.single * interleave(jump)) + 2.0 * (layers.dbl * h) + h;
  return deinterleave(f);
}

void solve_velocity(const InterfaceGeometry& g, const StokesLayers& layers,
                    const PhysParams& params, const GmresOptions& options, StokesTrace& trace) {
  const Eigen::VectorXd rhs = interleave(trace.force) / (params.lambda + 1.0);
  const double coupling = 2.0 * (params.lambda - 1.0) / (params.lambda + 1.0);
  Eigen::VectorXd v = rhs;
  trace.report = SolveReport{0, 0.0, true};
  if (coupling != 0.0) {
    const auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      return x - coupling * (layers.dbl * x);
    };
    trace.report = gmres(apply, rhs, v, options);
    if (!trace.report.converged) {
      throw ConvergenceError("Stokes velocity: GMRES stagnated after " +
                                 std::to_string(trace.report.iterations) + " iterations",
                             trace.report.residual);
    }
  }
  trace.v2 = deinterleave(v);
  trace.V.resize(g.n);
  for (std::size_t j = 0; j < g.n; ++j) trace.V[j] = trace.v2[j].dot(g.normal[j]);
}

FieldSolution solve_fields(const Curve& curve, const BendingModel& bending,
                           const PhysParams& params, const FieldOptions& options) {
  const InterfaceGeometry g = InterfaceGeometry::from_curve(curve);
  FieldSolution out;
  out.nutrient = solve_nutrient(g, options.nutrient);
  const std::vector<double> f = bending_force(curve, bending, options.filter);
  const StokesLayers layers = assemble_stokes_layers(g, true);
  StokesTrace& t = out.stokes;
  t.jump = stress_jump(g, out.nutrient, f, bending.S_inv);
  t.slip = slip_velocity(g, out.nutrient, params);
  t.force = force_term(layers, t.jump, t.slip);
  solve_velocity(g, layers, params, options.stokes, t);
  return out;
}

}  // namespace tumorbim
