#include "tumorbim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tumorbim/error.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kUpsample = 4;

std::vector<double> coordinate(const std::vector<Vec2>& pts, int c) {
  std::vector<double> out(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) out[j] = pts[j][c];
  return out;
}

void require_grid(std::size_t n, const char* where) {
  if (!is_power_of_two(n) || n < 8) {
    throw GeometryError(std::string(where) + ": point count " + std::to_string(n) +
                        " is not a power of two >= 8");
  }
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

double signed_area(const std::vector<double>& x, const std::vector<double>& y) {
  const auto xa = spectral_derivative(x);
  const auto ya = spectral_derivative(y);
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) sum += x[j] * ya[j] - y[j] * xa[j];
  return 0.5 * sum * kTwoPi / static_cast<double>(x.size());
}

}  // namespace

double grid_alpha(std::size_t j, std::size_t n) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

double Curve::length() const { return kTwoPi * s_alpha; }

void Curve::validate() const {
  require_grid(phi.size(), "Curve");
  if (!(s_alpha > 0.0) || !std::isfinite(s_alpha)) {
    throw GeometryError("Curve: s_alpha must be positive and finite");
  }
}

Curve from_markers(const MarkerCurve& markers, ReparamReport* report) {
  const std::size_t n = markers.size();
  require_grid(n, "from_markers");

  std::vector<double> x = coordinate(markers.points, 0);
  std::vector<double> y = coordinate(markers.points, 1);
  const double area = signed_area(x, y);
  if (area == 0.0 || !std::isfinite(area)) {
    throw GeometryError("from_markers: degenerate curve (zero enclosed area)");
  }
  const bool reversed = area < 0.0;
  if (reversed) {
    std::vector<double> rx(n), ry(n);
    for (std::size_t j = 0; j < n; ++j) {
      rx[j] = x[(n - j) % n];
      ry[j] = y[(n - j) % n];
    }
    x.swap(rx);
    y.swap(ry);
  }

  const Spectrum cx = fft(x);
  const Spectrum cy = fft(y);
  const Spectrum dx = derivative(cx);
  const Spectrum dy = derivative(cy);

  // Metric |z'(beta)| on a refined grid, then its mean and periodic antiderivative.
  const std::size_t m = kUpsample * n;
  const auto dxf = ifft(resample(dx, m));
  const auto dyf = ifft(resample(dy, m));
  std::vector<double> metric(m);
  for (std::size_t j = 0; j < m; ++j) metric[j] = std::hypot(dxf[j], dyf[j]);
  const double mean_metric = periodic_mean(metric);
  const double length = kTwoPi * mean_metric;
  const Spectrum metric_hat = fft(metric);
  Spectrum anti(m);
  for (std::size_t j = 1; j < m; ++j) {
    if (j == m / 2) continue;
    anti[j] = metric_hat[j] / std::complex<double>(0.0, static_cast<double>(wavenumber(j, m)));
  }
  const double anti0 = fourier_eval(anti, 0.0);
  auto arclength = [&](double beta) {
    return mean_metric * beta + fourier_eval(anti, beta) - anti0;
  };

  // Cumulative arclength at refined nodes, for the Newton starting guesses.
  std::vector<double> nodes(m + 1);
  const auto anti_grid = ifft(anti);
  for (std::size_t j = 0; j < m; ++j) {
    nodes[j] = mean_metric * grid_alpha(j, m) + anti_grid[j] - anti_grid[0];
  }
  nodes[m] = length;

  const double tol = 1e-13 * std::max(1.0, length);
  std::vector<double> beta(n, 0.0);
  int worst = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const double target = length * static_cast<double>(j) / static_cast<double>(n);
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), target);
    const std::size_t k = static_cast<std::size_t>(std::clamp<long>(it - nodes.begin(), 1, static_cast<long>(m))) - 1;
    const double frac = (target - nodes[k]) / (nodes[k + 1] - nodes[k]);
    double b = grid_alpha(k, m) + frac * kTwoPi / static_cast<double>(m);
    int iter = 0;
    for (;; ++iter) {
      const double residual = arclength(b) - target;
      if (std::abs(residual) <= tol) break;
      if (iter == kMaxNewtonIterations) {
        throw GeometryError("from_markers: arclength Newton iteration did not converge "
                            "(residual " + std::to_string(residual) +
                            "); input under-resolved or self-intersecting");
      }
      const double speed = fourier_eval(metric_hat, b);
      if (!(speed > 0.0)) {
        throw GeometryError("from_markers: vanishing tangent; input is not a regular curve");
      }
      const double delta = residual / speed;
      b -= delta;
      if (std::abs(delta) < 1e-15) {
        ++iter;
        break;
      }
    }
    worst = std::max(worst, iter);
    beta[j] = b;
  }

  Curve curve;
  curve.s_alpha = length / kTwoPi;
  curve.ref_point = Vec2(fourier_eval(cx, 0.0), fourier_eval(cy, 0.0));
  curve.phi.resize(n);
  double previous = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double raw = std::atan2(fourier_eval(dy, beta[j]), fourier_eval(dx, beta[j]));
    const double theta = j == 0 ? raw : previous + wrap_angle(raw - previous);
    curve.phi[j] = theta - grid_alpha(j, n);
    previous = theta;
  }
  const double closing = previous + wrap_angle(curve.phi[0] - previous) - curve.phi[0];
  if (std::abs(closing - kTwoPi) > 1e-6) {
    throw GeometryError("from_markers: tangent winding number is not 1");
  }
  if (report != nullptr) {
    report->max_newton_iterations = worst;
    report->reversed = reversed;
  }
  return curve;
}

MarkerCurve reconstruct(const Curve& curve) {
  curve.validate();
  const std::size_t n = curve.size();
  std::vector<double> c(n), s(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = grid_alpha(j, n) + curve.phi[j];
    c[j] = std::cos(theta);
    s[j] = std::sin(theta);
  }
  const auto px = mean_free_antiderivative(c);
  const auto py = mean_free_antiderivative(s);
  MarkerCurve out;
  out.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.points[j] = curve.ref_point + curve.s_alpha * Vec2(px[j], py[j]);
  }
  return out;
}

std::vector<double> curvature(const Curve& curve) {
  curve.validate();
  auto k = spectral_derivative(curve.phi);
  for (double& v : k) v = (1.0 + v) / curve.s_alpha;
  return k;
}

GeometryStats geometry_stats(const MarkerCurve& markers) {
  const std::size_t n = markers.size();
  require_grid(n, "geometry_stats");
  const auto x = coordinate(markers.points, 0);
  const auto y = coordinate(markers.points, 1);
  const auto xa = spectral_derivative(x);
  const auto ya = spectral_derivative(y);
  double area = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    area += x[j] * ya[j] - y[j] * xa[j];
    mx += x[j] * x[j] * ya[j];
    my -= y[j] * y[j] * xa[j];
  }
  const double h = kTwoPi / static_cast<double>(n);
  area *= 0.5 * h;
  mx *= 0.5 * h;
  my *= 0.5 * h;
  if (!(area > 0.0)) {
    throw GeometryError("geometry_stats: non-positive enclosed area (orientation or "
                        "self-intersection failure)");
  }
  GeometryStats stats;
  stats.area = area;
  stats.effective_radius = std::sqrt(area / std::numbers::pi);
  stats.centroid = Vec2(mx / area, my / area);
  return stats;
}

double shape_factor(const MarkerCurve& markers) {
  const GeometryStats stats = geometry_stats(markers);
  const std::size_t n = markers.size();
  const std::size_t m = kUpsample * n;
  const auto xf = ifft(resample(fft(coordinate(markers.points, 0)), m));
  const auto yf = ifft(resample(fft(coordinate(markers.points, 1)), m));
  double reach = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    reach = std::max(reach, std::hypot(xf[j] - stats.centroid.x(), yf[j] - stats.centroid.y()));
  }
  return std::max(0.0, reach / stats.effective_radius - 1.0);
}

MarkerCurve polar_markers(std::size_t n, double r0, const std::vector<ShapeMode>& modes) {
  if (!(r0 > 0.0)) throw GeometryError("polar_markers: base radius must be positive");
  MarkerCurve out;
  out.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = grid_alpha(j, n);
    double r = r0;
    for (const auto& mode : modes) {
      const double phase = mode.l * a;
      r += mode.amplitude * (mode.cosine ? std::cos(phase) : std::sin(phase));
    }
    if (!(r > 0.0)) throw GeometryError("polar_markers: radius becomes non-positive");
    out.points[j] = Vec2(r * std::cos(a), r * std::sin(a));
  }
  return out;
}

InterfaceGeometry InterfaceGeometry::from_curve(const Curve& curve) {
  curve.validate();
  InterfaceGeometry g;
  g.n = curve.size();
  g.s_alpha = curve.s_alpha;
  g.x = reconstruct(curve).points;
  g.theta.resize(g.n);
  g.tangent.resize(g.n);
  g.normal.resize(g.n);
  g.theta_alpha = spectral_derivative(curve.phi);
  g.kappa.resize(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double theta = grid_alpha(j, g.n) + curve.phi[j];
    g.theta[j] = theta;
    g.tangent[j] = Vec2(std::cos(theta), std::sin(theta));
    g.normal[j] = Vec2(std::sin(theta), -std::cos(theta));
    g.theta_alpha[j] += 1.0;
    g.kappa[j] = g.theta_alpha[j] / g.s_alpha;
  }
  return g;
}

}  // namespace tumorbim
