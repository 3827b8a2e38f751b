#pragma once

#include <vector>

namespace mop::classical {

// Scalar reference polynomials with their recurrences and norm formulas,
// used by tests and by the experiment presets as ground truth. Coefficient
// vectors are in ascending powers.

double polyval(const std::vector<double>& c, double x);
std::vector<double> polyder(const std::vector<double>& c);

/// Monic Chebyshev of the first kind, t_n = 2^{1-n} T_n for n >= 1.
std::vector<double> chebyshev1_monic(int n);
/// Chebyshev of the second kind U_n (standard normalization, U_{-1} = 0).
std::vector<double> chebyshev_u(int n);
/// Norm of t_n against 1/sqrt(1-x^2): pi for n = 0, pi/2^{2n-1} for n >= 1.
double chebyshev1_norm(int n);

/// Monic alternative Jacobi p_n^{(alpha,beta)}: orthogonal on (0,1) against
/// x^alpha (1-x)^beta.
std::vector<double> jacobi_alt(int n, double alpha, double beta);
double jacobi_alt_norm(int n, double alpha, double beta);

/// Monic Hermite, orthogonal against exp(-x^2); h_n = sqrt(pi) n! / 2^n.
std::vector<double> hermite_monic(int n);
double hermite_norm(int n);

/// Monic Laguerre, orthogonal against x^alpha exp(-x) on (0,inf);
/// h_n = n! Gamma(n+1+alpha).
std::vector<double> laguerre_monic(int n, double alpha);
double laguerre_norm(int n, double alpha);

/// Monic three-term recurrence x p_k = p_{k+1} + diag_k p_k + sub_k p_{k-1},
/// sub_k = h_k / h_{k-1}.
struct ScalarRecurrence {
  std::vector<double> diag;
  std::vector<double> sub;  // sub[0] unused
  std::vector<double> h;
};

ScalarRecurrence hermite_recurrence(int n_max);
ScalarRecurrence laguerre_recurrence(int n_max, double alpha);
ScalarRecurrence chebyshev1_recurrence(int n_max);
ScalarRecurrence jacobi_alt_recurrence(int n_max, double alpha, double beta);

}  // namespace mop::classical

namespace mop {
struct BiorthogonalSystem;
/// p = 1 orthogonal system assembled from a classical recurrence, bypassing
/// the moment-matrix factorization. Ground truth for tests and presets.
BiorthogonalSystem scalar_system(const classical::ScalarRecurrence& rec);
}  // namespace mop
