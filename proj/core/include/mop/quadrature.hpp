#pragma once

#include <Eigen/Dense>

namespace mop {

/// Nodes and weights of a Gauss rule; a rule with n nodes integrates
/// polynomials up to degree 2n-1 exactly against its weight.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch: Gauss rule from the monic three-term recurrence
/// p_{k+1} = (x - diag_k) p_k - sub_k p_{k-1} and total mass mu0.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag,
                            const Eigen::VectorXd& sub, double mu0);

QuadratureRule gauss_legendre01(int n);                        // weight 1 on (0,1)
QuadratureRule gauss_jacobi01(int n, double alpha, double beta);  // x^a (1-x)^b on (0,1)
QuadratureRule gauss_chebyshev1(int n);                        // 1/sqrt(1-x^2) on (-1,1)
QuadratureRule gauss_hermite(int n);                           // exp(-x^2) on R
QuadratureRule gauss_laguerre(int n, double alpha);            // x^a exp(-x) on (0,inf)

}  // namespace mop
