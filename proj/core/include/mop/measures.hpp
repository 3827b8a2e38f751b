#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "mop/block_matrix.hpp"
#include "mop/matrix_polynomial.hpp"
#include "mop/quadrature.hpp"

namespace mop {

enum class WeightFamily { lebesgue, jacobi_alt, chebyshev1, hermite, laguerre };

std::string family_name(WeightFamily f);
WeightFamily family_from_name(const std::string& name);

/// Classical scalar weight with parameters; support is implied by the family.
struct BaseWeight {
  WeightFamily family = WeightFamily::lebesgue;
  double alpha = 0.0;
  double beta = 0.0;

  double weight(double x) const;
  bool bounded_support() const;
  /// Gauss rule of n nodes for this weight.
  QuadratureRule rule(int n) const;
};

/// Matrix measure d mu(x) = F(x) w(x) dx with a classical scalar weight w and
/// an optional matrix polynomial factor F. Without a factor, F = I_p.
struct MatrixMeasure {
  int p = 1;
  BaseWeight base;
  std::optional<MatrixPolynomial> factor;
  /// Quadrature nodes; 0 picks (max degree)/2 + 8 from the degree request.
  int quad_order = 0;

  int factor_degree() const { return factor ? factor->degree() : 0; }
  Eigen::MatrixXd factor_value(double x) const;
};

/// Rule able to integrate polynomials of degree max_degree exactly against
/// the measure (factor degree included by the caller). Throws
/// UnderResolvedQuadrature when a fixed quad_order is too small for it.
QuadratureRule quadrature_for(const MatrixMeasure& measure, int max_degree);

/// Matrix moments m_k = int x^k F(x) w(x) dx, k = 0..count-1, composed from
/// the closed-form power moments of the classical bases.
std::vector<Eigen::MatrixXd> moments(const MatrixMeasure& measure, int count);

/// Closed-form power moment of the base weight in extended precision; the
/// oracle-grade input for gauss_borel_factorize_xp.
long double scalar_moment_xp(const BaseWeight& base, int k);

/// Block Hankel moment matrix, block (k,l) = m_{k+l}.
BlockMatrix moment_matrix(const MatrixMeasure& measure, int n_blocks);

/// Moment matrix of W(x) d mu(x) by direct quadrature. Must agree blockwise
/// with apply_poly_shift(w, moment_matrix(...)).
BlockMatrix perturbed_moment_matrix(const MatrixMeasure& measure,
                                    const MatrixPolynomial& w, int n_blocks);

/// Moment matrix with an extra scalar integrand factor per block entry,
/// entry (a,b) weighted by g(x,a,b). Used for the exponential Toda flows.
BlockMatrix weighted_moment_matrix(
    const MatrixMeasure& measure, int n_blocks,
    const std::function<double(double, int, int)>& entry_weight,
    int extra_order);

}  // namespace mop
