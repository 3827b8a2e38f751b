#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mop/block_matrix.hpp"
#include "mop/christoffel.hpp"
#include "mop/measures.hpp"

namespace mop {

/// Finite sets of diagonal time matrices t_{i,j} = diag(t_{i,j,1..p}),
/// j = 0..j_max. Index j is the power of x in the exponential deformation.
struct TodaTimes {
  int p = 1;
  std::vector<Eigen::VectorXd> t1;
  std::vector<Eigen::VectorXd> t2;

  static TodaTimes zero(int p) { return TodaTimes{p, {}, {}}; }
  /// Scalar j=1 flow: t_{1,1} = s I_p.
  static TodaTimes flow1(int p, double s);

  bool is_zero() const;
  /// Every t_{i,j} a scalar multiple of the identity (the non-Abelian
  /// reduction of the multicomponent flows).
  bool is_scalar() const;
  /// Exponent polynomial g(x) = sum_j t_{i,j,a} x^j for side i, component a.
  std::vector<double> exponent(int side, int component) const;

  TodaTimes shifted(int side, int j, int component, double delta) const;
};

struct TodaState {
  TodaTimes times;
  BlockMatrix m;
  GaussBorelFactorization fact;

  Eigen::MatrixXd h(int k) const { return fact.h_block(k); }
  int blocks() const { return fact.size(); }
};

/// Moment matrix of exp(sum t_{1,j} x^j) d mu(x) exp(-sum t_{2,j} x^j),
/// computed by quadrature of the deformed weight and factorized. Throws
/// DivergentDeformation when the deformed integrand grows at an unbounded
/// support boundary.
TodaState evolve_measure(const MatrixMeasure& measure, const TodaTimes& times,
                         int n_blocks, double tol = 1e-10);

struct TodaResidual {
  /// max over (a,b) of the multicomponent 2D Toda equation residual.
  double multicomponent = 0.0;
  /// Residual of the non-Abelian reduction driven by the total flows.
  double non_abelian = 0.0;
};

/// Central-difference verification of the Toda equations in the j=1 flows
/// at the given times, step h on each time component.
TodaResidual toda_residual(const MatrixMeasure& measure, const TodaTimes& times,
                           int k, double h = 1e-3, int n_blocks = -1);

/// Truncated Lax matrices L1 = S1 Lambda S1^{-1} and
/// L2 = S2~ Lambda^T S2~^{-1}, S2~ = H S2^{-T}. Entries are exact on the
/// leading (blocks-1) window; in the Hankel case L1 = L2 there.
std::pair<BlockMatrix, BlockMatrix> lax_matrices(const GaussBorelFactorization& fact);
std::pair<BlockMatrix, BlockMatrix> lax_matrices(const TodaState& state);

/// ||L1 - L2|| on the common exact window.
double lax_defect(const BlockMatrix& l1, const BlockMatrix& l2);

struct FlowCheckPoint {
  double t = 0.0;
  bool ok = false;
  std::string error;
  double relation_residual = 0.0;   // H^(t) omega2(t) - omega1(t) H(t)
  double diag_residual = 0.0;       // H^_k(t) - omega1_{k,k}(t) H_k(t)
  double band_residual = 0.0;
  double christoffel_residual = 0.0;  // spectral formula vs direct factorization
};

struct FlowReport {
  std::vector<FlowCheckPoint> points;
  bool all_ok() const;
  double max_residual() const;
};

/// Scalar-time flow compatibility of the Christoffel transformation: at each
/// grid point s (the t_{1,1} flow) rebuild both systems, the connection data
/// and the spectral-formula transforms, and collect the residuals.
FlowReport christoffel_flow_check(const MatrixMeasure& measure,
                                  const MatrixPolynomial& w,
                                  const std::vector<double>& t_grid, int k_max,
                                  double tol = 1e-10);

}  // namespace mop
