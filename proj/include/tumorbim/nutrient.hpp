#pragma once

// Quasi-steady nutrient sigma with  Laplacian(sigma) = sigma  inside the
// interface and sigma = 1 on it, represented as a double-layer potential of
// the modified Helmholtz kernel -K0(r)/(2 pi).

#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/gmres.hpp"
#include "tumorbim/quadrature.hpp"

namespace tumorbim {

struct NutrientTrace {
  std::vector<double> zeta;          // layer density
  std::vector<double> sigma_n;       // n . grad sigma on the interface
  std::vector<double> sigma_n_s;     // d/ds of sigma_n
  std::vector<double> hess_tangent;  // s . (grad grad sigma) n
  std::vector<double> hess_normal;   // n . (grad grad sigma) n
  SolveReport report;
};

inline GmresOptions default_nutrient_gmres() { return {1e-12, 200, 500}; }

/// Solves (1/2 + D) zeta = 1. Throws ConvergenceError when GMRES fails.
std::vector<double> solve_density(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                                  const GmresOptions& options, SolveReport* report = nullptr);

/// n . grad sigma = d/ds S[zeta_s] - n . S[n zeta].
std::vector<double> normal_derivative(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                                      const std::vector<double>& zeta);

struct HessianNormalData {
  std::vector<double> tangent;
  std::vector<double> normal;
};
/// s.(grad grad sigma n) = d/ds sigma_n and n.(grad grad sigma n) = 1 - kappa sigma_n.
HessianNormalData hessian_normal_data(const InterfaceGeometry& g,
                                      const std::vector<double>& sigma_n);

/// Full pipeline on one interface.
NutrientTrace solve_nutrient(const InterfaceGeometry& g, const HelmholtzLayers& layers,
                             const GmresOptions& options = default_nutrient_gmres());
NutrientTrace solve_nutrient(const InterfaceGeometry& g,
                             const GmresOptions& options = default_nutrient_gmres());

/// sigma at an interior point by the trapezoid rule. Throws DomainError for
/// points outside the curve or closer than five grid spacings to it.
double evaluate_interior(const InterfaceGeometry& g, const std::vector<double>& zeta,
                         const Vec2& point);

}  // namespace tumorbim
