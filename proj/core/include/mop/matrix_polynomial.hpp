#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mop/errors.hpp"

namespace mop {

/// Matrix polynomial W(x) = A_0 + A_1 x + ... + A_N x^N with p x p real
/// coefficient blocks. Trailing blocks that are exactly zero are trimmed at
/// construction so that degree() is the true top index.
class MatrixPolynomial {
 public:
  explicit MatrixPolynomial(int p) : p_(p) {
    coeffs_.push_back(Eigen::MatrixXd::Zero(p, p));
  }
  explicit MatrixPolynomial(std::vector<Eigen::MatrixXd> coeffs,
                            double zero_tol = 0.0);

  /// Constant polynomial I_p.
  static MatrixPolynomial identity(int p);
  /// c * x^degree * I_p.
  static MatrixPolynomial monomial(int p, int degree, double c = 1.0);
  /// I_p x - a.
  static MatrixPolynomial linear(const Eigen::MatrixXd& a);
  /// Scalar polynomial c_0 + c_1 x + ... times I_p.
  static MatrixPolynomial scalar(int p, const std::vector<double>& coeffs);

  int p() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_monic() const;
  bool is_zero(double atol = 0.0) const;

  /// Coefficient A_k; a zero block for k beyond the degree.
  Eigen::MatrixXd coeff(int k) const;
  const std::vector<Eigen::MatrixXd>& coeffs() const { return coeffs_; }

  Eigen::MatrixXd evaluate(double x) const;
  Eigen::MatrixXcd evaluate(std::complex<double> x) const;
  /// P(A) = sum_k P_k A^k, coefficients multiplying from the left.
  Eigen::MatrixXd evaluate_at_matrix(const Eigen::MatrixXd& a) const;

  MatrixPolynomial derivative() const;

  double coefficient_norm() const;

  MatrixPolynomial& operator+=(const MatrixPolynomial& other);
  MatrixPolynomial& operator-=(const MatrixPolynomial& other);
  MatrixPolynomial& operator*=(double s);

 private:
  int p_;
  std::vector<Eigen::MatrixXd> coeffs_;
};

MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b);
MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b);
MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);
MatrixPolynomial operator*(double s, MatrixPolynomial a);
/// B * P(x) with a constant block from the left.
MatrixPolynomial operator*(const Eigen::MatrixXd& b, const MatrixPolynomial& a);
/// P(x) * B with a constant block from the right.
MatrixPolynomial operator*(const MatrixPolynomial& a, const Eigen::MatrixXd& b);

/// Np x Np companion linearization of a monic matrix polynomial: identity
/// super-diagonal blocks, last block row (-A_0, ..., -A_{N-1}).
Eigen::MatrixXd companion_matrix(const MatrixPolynomial& w);

/// Right division q(x) such that q(x) * w(x) = r(x), for monic w. Solved as a
/// least-squares block Toeplitz system in q's coefficients; throws
/// DivisionResidual when the relative residual exceeds tol.
MatrixPolynomial divide_right(const MatrixPolynomial& r,
                              const MatrixPolynomial& w, double tol = 1e-8);

}  // namespace mop
