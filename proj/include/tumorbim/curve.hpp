#pragma once

// Closed planar curves in tangent-angle / length form.
//
// A curve is stored as phi(alpha_j) = theta(alpha_j) - alpha_j on the grid
// alpha_j = 2*pi*j/N, together with the uniform metric s_alpha = L/(2*pi) and
// the position of the alpha = 0 marker. Orientation is counterclockwise, the
// unit tangent is (cos theta, sin theta) and the outward normal is
// (sin theta, -cos theta).

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace tumorbim {

using Vec2 = Eigen::Vector2d;

struct Curve {
  std::vector<double> phi;
  double s_alpha = 0.0;
  Vec2 ref_point = Vec2::Zero();

  std::size_t size() const { return phi.size(); }
  double length() const;
  /// Throws GeometryError unless N is a power of two and s_alpha > 0.
  void validate() const;
};

struct MarkerCurve {
  std::vector<Vec2> points;
  std::size_t size() const { return points.size(); }
};

struct ReparamReport {
  int max_newton_iterations = 0;
  bool reversed = false;
};

inline constexpr int kMaxNewtonIterations = 50;

/// Re-sample an arbitrary closed marker sequence at equal arclength and
/// convert it to tangent-angle form. Point 0 of the input becomes the
/// reference point. Clockwise input is reversed first.
Curve from_markers(const MarkerCurve& markers, ReparamReport* report = nullptr);

/// Marker positions from the spectral antiderivative of the unit tangent.
MarkerCurve reconstruct(const Curve& curve);

/// kappa = (1 + phi_alpha) / s_alpha.
std::vector<double> curvature(const Curve& curve);

struct GeometryStats {
  double area = 0.0;
  double effective_radius = 0.0;
  Vec2 centroid = Vec2::Zero();
};

/// Enclosed area, equal-area radius and area centroid (spectral shoelace).
GeometryStats geometry_stats(const MarkerCurve& markers);

/// max |x - centroid| / R_eff - 1, evaluated on a 4x Fourier-refined
/// polygon; clamped at 0.
double shape_factor(const MarkerCurve& markers);

/// Perturbed circle r(a) = R0 + sum amp*cos(l a) (or sin), sampled
/// uniformly in polar angle a.
struct ShapeMode {
  int l = 0;
  double amplitude = 0.0;
  bool cosine = true;
};
MarkerCurve polar_markers(std::size_t n, double r0, const std::vector<ShapeMode>& modes);

/// Everything the field solvers need on the grid.
struct InterfaceGeometry {
  std::size_t n = 0;
  double s_alpha = 0.0;
  std::vector<Vec2> x;
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;
  std::vector<double> theta;
  std::vector<double> theta_alpha;
  std::vector<double> kappa;

  static InterfaceGeometry from_curve(const Curve& curve);
};

/// Grid point alpha_j.
double grid_alpha(std::size_t j, std::size_t n);

}  // namespace tumorbim
