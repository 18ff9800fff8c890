#pragma once

#include <Eigen/Core>

#include <functional>

namespace tumorbim {

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;  // true ||A x - b|| / ||b||, recomputed at the end
  bool converged = false;
};

struct GmresOptions {
  double tol = 1e-12;
  int restart = 200;
  int max_iterations = 500;
};

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Restarted GMRES without preconditioning. x holds the initial guess on
/// entry and the best iterate on return.
SolveReport gmres(const LinearOperator& apply, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                  const GmresOptions& options = {});

inline SolveReport gmres(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                         const GmresOptions& options = {}) {
  return gmres([&a](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a * v; }, b, x,
               options);
}

}  // namespace tumorbim
