#pragma once

// Periodic quadrature for kernels with a ln|2 sin((a - a')/2)| singularity,
// the kernel splittings used by the nutrient and Stokes layer potentials, and
// dense Nystrom assembly.
//
// Index convention: kernels are evaluated for a source node j (integration
// variable) and a target node i. Vector unknowns are interleaved as
// (v_x0, v_y0, v_x1, v_y1, ...).

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

#include "tumorbim/curve.hpp"

namespace tumorbim {

struct KressWeights {
  std::size_t m = 0;
  std::vector<double> q;  // 2m entries, indexed by (j - i) mod 2m

  double operator()(std::size_t target, std::size_t source) const;
};

/// q_j = -(pi/m) sum_{k<m} cos(k j pi/m)/k - (-1)^j pi/(2 m^2).
KressWeights kress_weights(std::size_t m);

/// sum_j q_{|j-i|} f_j, approximating int_0^{2pi} ln|2 sin((a_i - a')/2)| f(a') da'.
double log_quadrature(std::span<const double> f, std::size_t target, const KressWeights& w);

/// Kernel value = g1 * ln|2 sin((a_i - a_j)/2)| + g2, with the metric
/// factor s_alpha already folded in.
struct SplitKernel {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// -K0(r)/(2 pi) * s_alpha.
SplitKernel split_helmholtz_single(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target);
/// d/dn' [-K0(r)/(2 pi)] * s_alpha, normal taken at the source.
SplitKernel split_helmholtz_double(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target);
/// -ln r * s_alpha.
SplitKernel split_stokeslet_log(const InterfaceGeometry& g, std::size_t source,
                                std::size_t target);

/// Smooth part xhat xhat^T / r^2 of the Stokeslet (xhat = x_source - x_target);
/// the diagonal limit is t t^T.
Eigen::Matrix2d stokeslet_rational(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target);

/// Double-layer kernel K with (D v)(x_t) = oint K v ds', i.e.
/// K = -(1/pi) (xhat . n_source) xhat xhat^T / r^4; diagonal -(kappa/2pi) t t^T.
Eigen::Matrix2d stresslet_kernel(const InterfaceGeometry& g, std::size_t source,
                                 std::size_t target);

/// Trapezoid evaluation of the Stokes double layer at one target node.
Vec2 stresslet_apply(const InterfaceGeometry& g, std::span<const Vec2> density,
                     std::size_t target);

/// Nystrom matrices of the modified Helmholtz single and double layer
/// operators. Both share r and the Bessel evaluations, so they are built
/// together.
struct HelmholtzLayers {
  Eigen::MatrixXd single;
  Eigen::MatrixXd dbl;
};
HelmholtzLayers assemble_helmholtz_layers(const InterfaceGeometry& g);

/// 2N x 2N matrices of S[f] = (1/4pi) oint G f ds' and D[v] = (1/4pi) oint v T n ds'.
/// The double layer is skipped (left empty) when with_double is false.
struct StokesLayers {
  Eigen::MatrixXd single;
  Eigen::MatrixXd dbl;
};
StokesLayers assemble_stokes_layers(const InterfaceGeometry& g, bool with_double);

/// Pack / unpack interleaved vector grid functions.
Eigen::VectorXd interleave(std::span<const Vec2> v);
std::vector<Vec2> deinterleave(const Eigen::VectorXd& v);

}  // namespace tumorbim
