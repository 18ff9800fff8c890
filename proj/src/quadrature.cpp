#include "tumorbim/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "tumorbim/bessel.hpp"
#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t distance(std::size_t source, std::size_t target, std::size_t n) {
  return (source + n - target) % n;
}

// ln|2 sin(pi d / N)| for index distance d != 0.
double log_two_sin(std::size_t d, std::size_t n) {
  return std::log(std::abs(2.0 * std::sin(kPi * static_cast<double>(d) / static_cast<double>(n))));
}

std::vector<double> log_table(std::size_t n) {
  std::vector<double> t(n, 0.0);
  for (std::size_t d = 1; d < n; ++d) t[d] = log_two_sin(d, n);
  return t;
}

double step(const InterfaceGeometry& g) { return 2.0 * kPi / static_cast<double>(g.n); }

}  // namespace

double KressWeights::operator()(std::size_t target, std::size_t source) const {
  return q[distance(source, target, q.size())];
}

KressWeights kress_weights(std::size_t m) {
  if (m < 2) throw DomainError("kress_weights: half grid size must be at least 2");
  KressWeights w;
  w.m = m;
  w.q.resize(2 * m);
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j < 2 * m; ++j) {
    double sum = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      // cos(k j pi / m) with the argument reduced exactly in integers.
      const std::size_t phase = (k * j) % (2 * m);
      sum += std::cos(kPi * static_cast<double>(phase) / md) / static_cast<double>(k);
    }
    const double alternating = (j % 2 == 0) ? 1.0 : -1.0;
    w.q[j] = -(kPi / md) * sum - alternating * kPi / (2.0 * md * md);
  }
  return w;
}

double log_quadrature(std::span<const double> f, std::size_t target, const KressWeights& w) {
  if (f.size() != w.q.size()) throw DomainError("log_quadrature: grid size mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += w(target, j) * f[j];
  return sum;
}

SplitKernel split_helmholtz_single(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target) {
  const double c = g.s_alpha / (2.0 * kPi);
  if (source == target) {
    return {c, c * (std::log(0.5 * g.s_alpha) + kEulerGamma)};
  }
  const double r = (g.x[source] - g.x[target]).norm();
  const BesselIK01 b = bessel_ik01(r);
  const double lg = log_two_sin(distance(source, target, g.n), g.n);
  return {c * b.i0, -c * (b.k0 + b.i0 * lg)};
}

SplitKernel split_helmholtz_double(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target) {
  if (source == target) return {0.0, g.theta_alpha[source] / (4.0 * kPi)};
  const Vec2 d = g.x[source] - g.x[target];
  const double r = d.norm();
  const BesselIK01 b = bessel_ik01(r);
  const double w = d.dot(g.normal[source]) * g.s_alpha / (2.0 * kPi * r);
  const double lg = log_two_sin(distance(source, target, g.n), g.n);
  return {w * b.i1, w * (b.k1 - b.i1 * lg)};
}

SplitKernel split_stokeslet_log(const InterfaceGeometry& g, std::size_t source,
                                std::size_t target) {
  if (source == target) return {-g.s_alpha, -g.s_alpha * std::log(g.s_alpha)};
  const double r = (g.x[source] - g.x[target]).norm();
  const double lg = log_two_sin(distance(source, target, g.n), g.n);
  return {-g.s_alpha, -g.s_alpha * (std::log(r) - lg)};
}

Eigen::Matrix2d stokeslet_rational(const InterfaceGeometry& g, std::size_t source,
                                   std::size_t target) {
  if (source == target) return g.tangent[source] * g.tangent[source].transpose();
  const Vec2 d = g.x[source] - g.x[target];
  return d * d.transpose() / d.squaredNorm();
}

Eigen::Matrix2d stresslet_kernel(const InterfaceGeometry& g, std::size_t source,
                                 std::size_t target) {
  if (source == target) {
    return -(g.kappa[source] / (2.0 * kPi)) * g.tangent[source] * g.tangent[source].transpose();
  }
  const Vec2 d = g.x[source] - g.x[target];
  const double r2 = d.squaredNorm();
  return -(d.dot(g.normal[source]) / (kPi * r2 * r2)) * d * d.transpose();
}

Vec2 stresslet_apply(const InterfaceGeometry& g, std::span<const Vec2> density,
                     std::size_t target) {
  if (density.size() != g.n) throw DomainError("stresslet_apply: grid size mismatch");
  Vec2 sum = Vec2::Zero();
  for (std::size_t j = 0; j < g.n; ++j) sum += stresslet_kernel(g, j, target) * density[j];
  return step(g) * g.s_alpha * sum;
}

HelmholtzLayers assemble_helmholtz_layers(const InterfaceGeometry& g) {
  const std::size_t n = g.n;
  const KressWeights w = kress_weights(n / 2);
  const std::vector<double> lg = log_table(n);
  const double h = step(g);
  const double c = g.s_alpha / (2.0 * kPi);
  HelmholtzLayers out;
  out.single.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.dbl.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const SplitKernel s = split_helmholtz_single(g, i, i);
    const SplitKernel d = split_helmholtz_double(g, i, i);
    const auto ii = static_cast<Eigen::Index>(i);
    out.single(ii, ii) = w.q[0] * s.g1 + h * s.g2;
    out.dbl(ii, ii) = w.q[0] * d.g1 + h * d.g2;
  }
  // r is symmetric in (i, j): evaluate the Bessel functions once per pair.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 dij = g.x[j] - g.x[i];
      const double r = dij.norm();
      const BesselIK01 b = bessel_ik01(r);
      const std::size_t dist = j - i;
      const double l = lg[dist];
      const double q = w.q[dist];  // q is even in the index distance
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);

      const double single = q * c * b.i0 - h * c * (b.k0 + b.i0 * l);
      out.single(ii, jj) = single;
      out.single(jj, ii) = single;

      // Source j, target i, and the reverse with xhat -> -xhat.
      const double w_ij = dij.dot(g.normal[j]) * c / r;
      const double w_ji = -dij.dot(g.normal[i]) * c / r;
      const double smooth = b.k1 - b.i1 * l;
      out.dbl(ii, jj) = w_ij * (q * b.i1 + h * smooth);
      out.dbl(jj, ii) = w_ji * (q * b.i1 + h * smooth);
    }
  }
  return out;
}

StokesLayers assemble_stokes_layers(const InterfaceGeometry& g, bool with_double) {
  const std::size_t n = g.n;
  const KressWeights w = kress_weights(n / 2);
  const std::vector<double> lg = log_table(n);
  const double h = step(g);
  const double c = g.s_alpha / (4.0 * kPi);
  const double ln_metric = std::log(g.s_alpha);
  const auto size = static_cast<Eigen::Index>(2 * n);
  StokesLayers out;
  out.single.resize(size, size);
  if (with_double) out.dbl.resize(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = static_cast<Eigen::Index>(2 * i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto cj = static_cast<Eigen::Index>(2 * j);
      const std::size_t dist = distance(j, i, n);
      Eigen::Matrix2d rational;
      double log_weight;
      Eigen::Matrix2d dl = Eigen::Matrix2d::Zero();
      if (i == j) {
        rational = g.tangent[j] * g.tangent[j].transpose();
        log_weight = -w.q[0] - h * ln_metric;
        if (with_double) dl = stresslet_kernel(g, j, i);
      } else {
        const Vec2 d = g.x[j] - g.x[i];
        const double r2 = d.squaredNorm();
        rational = d * d.transpose() / r2;
        log_weight = -w.q[dist] - h * (0.5 * std::log(r2) - lg[dist]);
        if (with_double) dl = -(d.dot(g.normal[j]) / (kPi * r2)) * rational;
      }
      out.single.block<2, 2>(ri, cj) =
          c * (log_weight * Eigen::Matrix2d::Identity() + h * rational);
      if (with_double) out.dbl.block<2, 2>(ri, cj) = h * g.s_alpha * dl;
    }
  }
  return out;
}

Eigen::VectorXd interleave(std::span<const Vec2> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(2 * v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    out(static_cast<Eigen::Index>(2 * j)) = v[j].x();
    out(static_cast<Eigen::Index>(2 * j + 1)) = v[j].y();
  }
  return out;
}

std::vector<Vec2> deinterleave(const Eigen::VectorXd& v) {
  std::vector<Vec2> out(static_cast<std::size_t>(v.size() / 2));
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = Vec2(v(static_cast<Eigen::Index>(2 * j)), v(static_cast<Eigen::Index>(2 * j + 1)));
  }
  return out;
}

}  // namespace tumorbim
