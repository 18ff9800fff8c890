#pragma once

// Two-phase Stokes problem on the interface: stress jump, velocity slip,
// the force term F = -2 S[jump] + 2 D[h] + h, and the second-kind system
//   v - 2 ((lambda-1)/(lambda+1)) D[v] = F / (lambda+1)
// for the exterior velocity v on the interface.

#include <span>
#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/gmres.hpp"
#include "tumorbim/membrane.hpp"
#include "tumorbim/nutrient.hpp"
#include "tumorbim/quadrature.hpp"

namespace tumorbim {

struct PhysParams {
  double A = 0.0;       // apoptosis-to-mitosis ratio
  double lambda = 1.0;  // viscosity ratio

  void validate() const;
};

struct StokesTrace {
  std::vector<Vec2> jump;
  std::vector<Vec2> slip;
  std::vector<Vec2> force;
  std::vector<Vec2> v2;
  std::vector<double> V;
  SolveReport report;
};

inline GmresOptions default_stokes_gmres() { return {1e-11, 200, 500}; }

/// [-S_inv f + 2 n.(HHs n) - 2] n + 2 s.(HHs n) s, where HHs = grad grad sigma.
std::vector<Vec2> stress_jump(const InterfaceGeometry& g, const NutrientTrace& nutrient,
                              std::span<const double> bending_force, double S_inv);

/// sigma_n n - (A/2) x; the tangential part of grad sigma vanishes since sigma = 1 on the interface.
std::vector<Vec2> slip_velocity(const InterfaceGeometry& g, const NutrientTrace& nutrient,
                                const PhysParams& params);

std::vector<Vec2> force_term(const StokesLayers& layers, std::span<const Vec2> jump,
                             std::span<const Vec2> slip);

/// Fills v2, V and report. lambda = 1 needs no solve (v = F/2).
void solve_velocity(const InterfaceGeometry& g, const StokesLayers& layers,
                    const PhysParams& params, const GmresOptions& options, StokesTrace& trace);

/// Whole pipeline for a given curve: nutrient, bending force, jump, slip, velocity.
struct FieldOptions {
  GmresOptions nutrient = default_nutrient_gmres();
  GmresOptions stokes = default_stokes_gmres();
  FilterParams filter;
};
struct FieldSolution {
  NutrientTrace nutrient;
  StokesTrace stokes;
};
FieldSolution solve_fields(const Curve& curve, const BendingModel& bending,
                           const PhysParams& params, const FieldOptions& options = {});

}  // namespace tumorbim
