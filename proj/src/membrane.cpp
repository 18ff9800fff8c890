#include "tumorbim/membrane.hpp"

#include <cmath>

#include "tumorbim/error.hpp"

namespace tumorbim {

void BendingModel::validate() const {
  if (!(S_inv >= 0.0)) throw DomainError("bending: S_inv must be non-negative");
  if (kind == BendingKind::weakening) {
    if (!(C >= 0.0 && C < 1.0)) throw DomainError("bending: C must lie in [0, 1)");
    if (!(lambda_c > 0.0)) throw DomainError("bending: lambda_c must be positive");
  }
}

NuDerivatives nu_and_derivatives(double kappa, const BendingModel& model) {
  if (model.kind == BendingKind::uniform) return {};
  const double a = model.lambda_c * model.lambda_c;
  const double k2 = kappa * kappa;
  const double g = std::exp(-a * k2);
  NuDerivatives out;
  out.nu = model.C * g + 1.0 - model.C;
  out.d1 = model.C * (-2.0 * a * kappa) * g;
  out.d2 = model.C * (-2.0 * a + 4.0 * a * a * k2) * g;
  out.d3 = model.C * (12.0 * a * a * kappa - 8.0 * a * a * a * k2 * kappa) * g;
  return out;
}

std::vector<double> bending_force(const Curve& curve, const BendingModel& model,
                                  const FilterParams& filter) {
  curve.validate();
  const std::size_t n = curve.size();
  const Spectrum phi_hat = fourier_filter(fft(curve.phi), filter);
  Spectrum kappa_hat = derivative(phi_hat);
  kappa_hat[0] += 1.0;
  for (auto& c : kappa_hat) c /= curve.s_alpha;
  const auto kappa = ifft(kappa_hat);
  const auto kappa_s = ifft(derivative(kappa_hat));
  const auto kappa_ss = ifft(derivative(kappa_hat, 2));
  const double s2 = curve.s_alpha * curve.s_alpha;

  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = kappa[j];
    const double ks = kappa_s[j] / curve.s_alpha;
    const double kss = kappa_ss[j] / s2;
    const NuDerivatives nu = nu_and_derivatives(k, model);
    const double a = 0.5 * nu.d2 * k * k + 2.0 * nu.d1 * k + nu.nu;
    const double b = 0.5 * nu.d3 * k * k + 3.0 * nu.d2 * k + 3.0 * nu.d1;
    const double c = 0.5 * nu.d1 * k + 0.5 * nu.nu;
    f[j] = a * kss + b * ks * ks + c * k * k * k;
  }
  return f;
}

}  // namespace tumorbim
