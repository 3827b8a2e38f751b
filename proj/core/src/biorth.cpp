#include "mop/biorth.hpp"

#include <Eigen/LU>

namespace mop {

namespace {

BiorthogonalSystem system_from_factors(const GaussBorelFactorization& fact,
                                       int p, int n_max) {
  BiorthogonalSystem sys;
  sys.p = p;
  sys.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Eigen::MatrixXd> c1, c2;
    c1.reserve(n + 1);
    c2.reserve(n + 1);
    for (int l = 0; l <= n; ++l) {
      c1.push_back(fact.s1.block(n, l));
      c2.push_back(fact.s2.block(n, l));
    }
    sys.p1.emplace_back(std::move(c1));
    sys.p2.emplace_back(std::move(c2));
    sys.h.push_back(fact.h.block(n, n));
  }
  return sys;
}

}  // namespace

BiorthogonalSystem build_biorthogonal(const BlockMatrix& m, int n_max,
                                      double tol) {
  if (m.rows() < n_max + 1)
    throw InsufficientRows("need " + std::to_string(n_max + 1) +
                           " block rows, have " + std::to_string(m.rows()));
  BlockMatrix trunc = m.truncated(n_max + 1, n_max + 1);
  GaussBorelFactorization fact = gauss_borel_factorize(trunc, tol);
  return system_from_factors(fact, m.p(), n_max);
}

BiorthogonalSystem build_biorthogonal_xp(const MatrixXld& m, int p, int n_max,
                                         double tol) {
  if (m.rows() < (n_max + 1) * p)
    throw InsufficientRows("need " + std::to_string(n_max + 1) + " block rows");
  const MatrixXld trunc = m.topLeftCorner((n_max + 1) * p, (n_max + 1) * p);
  GaussBorelFactorization fact = gauss_borel_factorize_xp(trunc, p, tol);
  return system_from_factors(fact, p, n_max);
}

std::pair<MatrixPolynomial, MatrixPolynomial> quasidet_polynomial(
    const BlockMatrix& m, int n) {
  const int p = m.p();
  if (n == 0)
    return {MatrixPolynomial::identity(p), MatrixPolynomial::identity(p)};
  if (m.rows() < n + 1)
    throw InsufficientRows("quasi-determinant expressions for degree " +
                           std::to_string(n) + " need " + std::to_string(n + 1) +
                           " block rows");

  // leading principal part M_[n]
  Eigen::MatrixXd a = m.data().topLeftCorner(n * p, n * p);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw SingularLeadingBlock("M_[" + std::to_string(n) + "] is singular");

  // P^[1]_n(x) = I x^n - (m_n .. m_{2n-1}) M_[n]^{-1} (I, Ix, .., Ix^{n-1})^T
  Eigen::MatrixXd row(p, n * p);
  for (int j = 0; j < n; ++j) row.middleCols(j * p, p) = m.block(n, j);
  Eigen::MatrixXd c1 = row * lu.inverse();

  // (P^[2]_n(x))^T = I x^n - (I, .., Ix^{n-1}) M_[n]^{-1} (m_n; ..; m_{2n-1})
  Eigen::MatrixXd col(n * p, p);
  for (int i = 0; i < n; ++i) col.middleRows(i * p, p) = m.block(i, n);
  Eigen::MatrixXd c2 = lu.inverse() * col;

  std::vector<Eigen::MatrixXd> q1, q2;
  for (int j = 0; j < n; ++j) {
    q1.push_back(-c1.middleCols(j * p, p));
    q2.push_back(-c2.middleRows(j * p, p).transpose());
  }
  q1.push_back(Eigen::MatrixXd::Identity(p, p));
  q2.push_back(Eigen::MatrixXd::Identity(p, p));
  return {MatrixPolynomial(std::move(q1)), MatrixPolynomial(std::move(q2))};
}

Eigen::MatrixXcd cd_kernel(const BiorthogonalSystem& sys, int n,
                           std::complex<double> x, std::complex<double> y) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(sys.p, sys.p);
  for (int k = 0; k <= n; ++k) {
    Eigen::MatrixXcd hk_inv =
        sys.h[k].cast<std::complex<double>>().partialPivLu().inverse();
    acc += sys.p2[k].evaluate(y).transpose() * hk_inv * sys.p1[k].evaluate(x);
  }
  return acc;
}

Eigen::MatrixXd cd_kernel_at_matrix(const BiorthogonalSystem& sys, int n,
                                    double y, const Eigen::MatrixXd& a) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(sys.p, sys.p);
  for (int m = 0; m <= n; ++m)
    acc += sys.p2[m].evaluate(y) *
           sys.h[m].partialPivLu().solve(sys.p1[m].evaluate_at_matrix(a));
  return acc;
}

BlockMatrix jacobi_block_matrix(const BiorthogonalSystem& sys) {
  const int p = sys.p;
  const int n = sys.n_max + 1;
  BlockMatrix s1(p, n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l <= k; ++l) s1.block(k, l) = sys.p1[k].coeff(l);
  BlockMatrix s1_inv = invert_unit_lower(s1);
  // (S1 Lambda S1^{-1})_{k,l} = sum_i (S1)_{k,i} (S1^{-1})_{i+1,l};
  // exact on rows 0..n-2 of the truncation
  BlockMatrix j(p, n - 1, n - 1);
  for (int k = 0; k + 1 < n; ++k)
    for (int l = 0; l + 1 < n; ++l) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
      for (int i = l > 0 ? l - 1 : 0; i <= k; ++i)
        acc += s1.block(k, i) * s1_inv.block(i + 1, l);
      j.block(k, l) = acc;
    }
  return j;
}

}  // namespace mop
