#include "tumorbim/gmres.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "tumorbim/error.hpp"

namespace tumorbim {

SolveReport gmres(const LinearOperator& apply, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                  const GmresOptions& options) {
  const Eigen::Index n = b.size();
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
  if (options.restart < 1 || options.max_iterations < 0) {
    throw DomainError("gmres: restart must be >= 1 and max_iterations >= 0");
  }
  SolveReport report;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    report.converged = true;
    return report;
  }

  const int m = static_cast<int>(std::min<Eigen::Index>(options.restart, n));
  Eigen::MatrixXd basis(n, m + 1);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
  std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
  Eigen::VectorXd g(m + 1);

  int total = 0;
  Eigen::VectorXd r = b - apply(x);
  double beta = r.norm();
  while (beta / bnorm > options.tol && total < options.max_iterations) {
    basis.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    hess.setZero();
    int k = 0;
    for (; k < m && total < options.max_iterations; ++k) {
      ++total;
      Eigen::VectorXd w = apply(basis.col(k));
      // Modified Gram-Schmidt, then one reorthogonalization pass.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const double hij = basis.col(i).dot(w);
          hess(i, k) += hij;
          w -= hij * basis.col(i);
        }
      }
      const double wnorm = w.norm();
      hess(k + 1, k) = wnorm;
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
        hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
        hess(i, k) = t;
      }
      const double denom = std::hypot(hess(k, k), hess(k + 1, k));
      cs[k] = denom == 0.0 ? 1.0 : hess(k, k) / denom;
      sn[k] = denom == 0.0 ? 0.0 : hess(k + 1, k) / denom;
      hess(k, k) = denom;
      hess(k + 1, k) = 0.0;
      g(k + 1) = -sn[k] * g(k);
      g(k) = cs[k] * g(k);
      if (wnorm == 0.0 || std::abs(g(k + 1)) / bnorm <= options.tol) {
        ++k;
        break;
      }
      basis.col(k + 1) = w / wnorm;
    }
    // Back substitution on the k x k triangle.
    Eigen::VectorXd y = hess.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    x += basis.leftCols(k) * y;
    r = b - apply(x);
    const double next = r.norm();
    if (k == 0 || next >= beta) {
      beta = next;
      break;  // stagnation: no further progress possible from restarts
    }
    beta = next;
  }
  report.iterations = total;
  report.residual = beta / bnorm;
  report.converged = report.residual <= options.tol;
  return report;
}

}  // namespace tumorbim
