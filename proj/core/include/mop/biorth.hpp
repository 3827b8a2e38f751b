#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "mop/block_matrix.hpp"
#include "mop/matrix_polynomial.hpp"

namespace mop {

/// Monic bi-orthogonal families P^{[1]}_n, P^{[2]}_n and block norms H_n
/// obtained from the Gauss-Borel factorization of a moment matrix: the
/// coefficient rows of S1 and S2 are the polynomial coefficients.
struct BiorthogonalSystem {
  int p = 0;
  int n_max = 0;
  std::vector<MatrixPolynomial> p1;
  std::vector<MatrixPolynomial> p2;
  std::vector<Eigen::MatrixXd> h;

  const MatrixPolynomial& poly1(int n) const { return p1.at(n); }
  const MatrixPolynomial& poly2(int n) const { return p2.at(n); }
  const Eigen::MatrixXd& norm(int n) const { return h.at(n); }
};

/// Builds the system of degrees 0..n_max from a moment matrix with at least
/// n_max+1 block rows. Propagates SingularTruncation from the factorization.
BiorthogonalSystem build_biorthogonal(const BlockMatrix& m, int n_max,
                                      double tol = 1e-10);

/// Same construction through the extended-precision factorization; the
/// oracle route for badly scaled classical windows in tests and presets.
BiorthogonalSystem build_biorthogonal_xp(const MatrixXld& m, int p, int n_max,
                                         double tol = 1e-10);

/// The bordered last quasi-determinant expressions for P^{[1]}_n and
/// P^{[2]}_n; an independent route to the same polynomials.
std::pair<MatrixPolynomial, MatrixPolynomial> quasidet_polynomial(
    const BlockMatrix& m, int n);

/// Christoffel-Darboux kernel
/// K_n(x,y) = sum_{k<=n} (P^{[2]}_k(y))^T H_k^{-1} P^{[1]}_k(x).
Eigen::MatrixXcd cd_kernel(const BiorthogonalSystem& sys, int n,
                           std::complex<double> x, std::complex<double> y);

/// K_n(y,A) = sum_{m<=n} P^{[2]}_m(y) H_m^{-1} P^{[1]}_m(A).
Eigen::MatrixXd cd_kernel_at_matrix(const BiorthogonalSystem& sys, int n,
                                    double y, const Eigen::MatrixXd& a);

/// Jacobi block matrix J = S1 Lambda S1^{-1} on the window of the system;
/// block tridiagonal in the Hankel case. Rows 0..n_max-1 are exact.
BlockMatrix jacobi_block_matrix(const BiorthogonalSystem& sys);

}  // namespace mop
