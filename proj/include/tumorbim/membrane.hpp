#pragma once

// Bending rigidity laws and the normal bending force f(kappa).
//
// Rigidity is normalized by its largest value nu0, which is absorbed into the
// strength S_inv:  nu(kappa) = C exp(-lambda_c^2 kappa^2) + 1 - C.
// f is the normal force per unit length before multiplication by S_inv.

#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {

enum class BendingKind { uniform, weakening };

struct BendingModel {
  BendingKind kind = BendingKind::uniform;
  double S_inv = 0.0;
  double C = 0.0;
  double lambda_c = 1.0;

  /// Throws DomainError on S_inv < 0, C outside [0,1) or lambda_c <= 0.
  void validate() const;
};

struct NuDerivatives {
  double nu = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

NuDerivatives nu_and_derivatives(double kappa, const BendingModel& model);

/// f = (nu'' k^2/2 + 2 nu' k + nu) k_ss + (nu''' k^2/2 + 3 nu'' k + 3 nu') k_s^2
///     + (nu' k/2 + nu/2) k^3,
/// which is k^3/2 + k_ss for uniform rigidity. Curvature derivatives are
/// taken spectrally after filtering phi.
std::vector<double> bending_force(const Curve& curve, const BendingModel& model,
                                  const FilterParams& filter = {});

}  // namespace tumorbim
