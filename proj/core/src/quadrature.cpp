#include "mop/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "mop/errors.hpp"

namespace mop {

QuadratureRule golub_welsch(const Eigen::VectorXd& diag,
                            const Eigen::VectorXd& sub, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) j(k, k) = diag(k);
  for (int k = 0; k + 1 < n; ++k) {
    const double e = std::sqrt(sub(k));
    j(k, k + 1) = e;
    j(k + 1, k) = e;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double q0 = es.eigenvectors()(0, k);
    rule.weights(k) = mu0 * q0 * q0;
  }
  return rule;
}

QuadratureRule gauss_legendre01(int n) {
  // monic Legendre on [-1,1]: a_k = 0, b_k = k^2/(4k^2-1); mapped to [0,1]
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 0.5);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) {
    const double b = (k * k) / (4.0 * k * k - 1.0);
    sub(k - 1) = b / 4.0;
  }
  return golub_welsch(diag, sub, 1.0);
}

QuadratureRule gauss_jacobi01(int n, double alpha, double beta) {
  // weight x^alpha (1-x)^beta on (0,1): standard Jacobi with a = beta,
  // b = alpha under z = 2x - 1, then mapped to x = (z+1)/2.
  const double a = beta, b = alpha;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    double ak;
    if (k == 0)
      ak = (b - a) / (a + b + 2.0);
    else
      ak = (b * b - a * a) /
           ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0));
    diag(k) = (ak + 1.0) / 2.0;
  }
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + a + b;
    const double bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                      (d * d * (d + 1.0) * (d - 1.0));
    sub(k - 1) = bk / 4.0;
  }
  const double mu0 = std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(alpha + beta + 2.0));
  return golub_welsch(diag, sub, mu0);
}

QuadratureRule gauss_chebyshev1(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.setConstant(n, M_PI / n);
  for (int k = 0; k < n; ++k)
    rule.nodes(k) = std::cos(M_PI * (2.0 * (n - k) - 1.0) / (2.0 * n));
  return rule;
}

QuadratureRule gauss_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = k / 2.0;
  return golub_welsch(diag, sub, std::sqrt(M_PI));
}

QuadratureRule gauss_laguerre(int n, double alpha) {
  if (alpha <= -1.0)
    throw Error("BadParameter", "Laguerre weight needs alpha > -1");
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0 + alpha;
  for (int k = 1; k < n; ++k) sub(k - 1) = k * (k + alpha);
  return golub_welsch(diag, sub, std::exp(std::lgamma(alpha + 1.0)));
}

}  // namespace mop
