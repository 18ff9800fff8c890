#include "tumorbim/nutrient.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tumorbim/bessel.hpp"
#include "tumorbim/error.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {
namespace {

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> as_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::vector<double> arclength_derivative(const std::vector<double>& f, double s_alpha) {
  auto d = spectral_derivative(f);
  for (double& v : d) v /= s_alpha;
  return d;
}

}  // namespace

std::vector<double> solve_density(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                                  const GmresOptions& options, SolveReport* report) {
  const auto n = static_cast<Eigen::Index>(g.n);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(n);
  const auto apply = [&layers](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return 0.5 * v + layers.dbl * v;
  };
  const SolveReport r = gmres(apply, rhs, zeta, options);
  if (report != nullptr) *report = r;
  if (!r.converged) {
    throw ConvergenceError("nutrient density: GMRES did not converge in " +
                               std::to_string(r.iterations) + " iterations",
                           r.residual);
  }
  return as_std(zeta);
}

std::vector<double> normal_derivative(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                                      const std::vector<double>& zeta) {
  const std::size_t n = g.n;
  const Eigen::VectorXd zeta_s = as_vector(arclength_derivative(zeta, g.s_alpha));
  Eigen::VectorXd nx(static_cast<Eigen::Index>(n)), ny(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    nx(static_cast<Eigen::Index>(j)) = g.normal[j].x() * zeta[j];
    ny(static_cast<Eigen::Index>(j)) = g.normal[j].y() * zeta[j];
  }
  const Eigen::VectorXd tangential = layers.single * zeta_s;
  const Eigen::VectorXd sx = layers.single * nx;
  const Eigen::VectorXd sy = layers.single * ny;
  std::vector<double> out = arclength_derivative(as_std(tangential), g.s_alpha);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out[j] -= g.normal[j].x() * sx(jj) + g.normal[j].y() * sy(jj);
  }
  return out;
}

HessianNormalData hessian_normal_data(const InterfaceGeometry& g,
                                      const std::vector<double>& sigma_n) {
  HessianNormalData out;
  out.tangent = arclength_derivative(sigma_n, g.s_alpha);
  out.normal.resize(g.n);
  for (std::size_t j = 0; j < g.n; ++j) out.normal[j] = 1.0 - g.kappa[j] * sigma_n[j];
  return out;
}

NutrientTrace solve_nutrient(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                             const GmresOptions& options) {
  NutrientTrace t;
  t.zeta = solve_density(g, layers, options, &t.report);
  t.sigma_n = normal_derivative(g, layers, t.zeta);
  HessianNormalData hess = hessian_normal_data(g, t.sigma_n);
  t.sigma_n_s = hess.tangent;
  t.hess_tangent = std::move(hess.tangent);
  t.hess_normal = std::move(hess.normal);
  return t;
}

NutrientTrace solve_nutrient(const InterfaceGeometry& g, const GmresOptions& options) {
  return solve_nutrient(g, assemble_helmholtz_layers(g), options);
}

double evaluate_interior(const InterfaceGeometry& g, const std::vector<double>& zeta,
                         const Vec2& point) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(g.n);
  const double guard = 5.0 * g.s_alpha * h;
  double winding = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const Vec2 a = g.x[j] - point;
    const Vec2 b = g.x[(j + 1) % g.n] - point;
    if (a.norm() < guard) {
      throw DomainError("evaluate_interior: point within five grid spacings of the interface");
    }
    winding += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  if (std::abs(winding) < std::numbers::pi) {
    throw DomainError("evaluate_interior: point lies outside the interface");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const Vec2 d = g.x[j] - point;
    const double r = d.norm();
    sum += bessel_k1(r) * d.dot(g.normal[j]) / r * zeta[j];
  }
  return sum * g.s_alpha * h / (2.0 * std::numbers::pi);
}

}  // namespace tumorbim
