#include <doctest.h>

#include <random>

#include "mop/biorth.hpp"
#include "mop/classical.hpp"
#include "mop/measures.hpp"

using namespace mop;

namespace {

MatrixMeasure lebesgue1() {
  MatrixMeasure m;
  m.p = 1;
  m.base.family = WeightFamily::lebesgue;
  return m;
}

MatrixMeasure chebyshev_i2() {
  MatrixMeasure m;
  m.p = 2;
  m.base.family = WeightFamily::chebyshev1;
  return m;
}

// nonsymmetric matrix measure on [0,1]: genuinely bi-orthogonal families
MatrixMeasure nonsymmetric2() {
  MatrixMeasure m;
  m.p = 2;
  m.base.family = WeightFamily::lebesgue;
  Eigen::MatrixXd f0(2, 2), f1(2, 2);
  f0 << 1.0, 0.25, 0.05, 1.0;
  f1 << 0.1, -0.2, 0.3, 0.0;
  m.factor = MatrixPolynomial({f0, f1});
  return m;
}

// inner product <P, Q> = int P F w Q^T by an independent quadrature rule
Eigen::MatrixXd inner(const MatrixMeasure& measure, const MatrixPolynomial& p,
                      const MatrixPolynomial& q) {
  QuadratureRule rule =
      measure.base.rule(p.degree() + q.degree() + measure.factor_degree() + 12);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(measure.p, measure.p);
  for (int i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes(i);
    acc += rule.weights(i) * p.evaluate(x) * measure.factor_value(x) *
           q.evaluate(x).transpose();
  }
  return acc;
}

}  // namespace

TEST_CASE("Lebesgue system has P1 = x - 1/2 and H1 = 1/12") {
  BiorthogonalSystem sys = build_biorthogonal(moment_matrix(lebesgue1(), 4), 3);
  CHECK(sys.p1[1].coeff(0)(0, 0) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(sys.p1[1].coeff(1)(0, 0) == 1.0);
  CHECK(sys.h[1](0, 0) == doctest::Approx(1.0 / 12).epsilon(1e-12));
  for (int n = 0; n <= 3; ++n) CHECK(sys.p1[n].is_monic());
}

TEST_CASE("Chebyshev system reproduces the monic Chebyshev polynomials") {
  MatrixMeasure m;
  m.p = 1;
  m.base.family = WeightFamily::chebyshev1;
  BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 6), 5);
  for (int n = 0; n <= 5; ++n) {
    auto tn = classical::chebyshev1_monic(n);
    for (int d = 0; d <= n; ++d)
      CHECK(sys.p1[n].coeff(d)(0, 0) == doctest::Approx(tn[d]).epsilon(1e-11));
    CHECK(sys.h[n](0, 0) ==
          doctest::Approx(classical::chebyshev1_norm(n)).epsilon(1e-11));
  }
}

TEST_CASE("diagonal measures decouple into scalar families") {
  MatrixMeasure m;
  m.p = 2;
  m.base.family = WeightFamily::lebesgue;
  Eigen::MatrixXd f0(2, 2), f1(2, 2);
  f0 << 1, 0, 0, 2;  // w1 = 1, w2 = 2 + x
  f1 << 0, 0, 0, 1;
  m.factor = MatrixPolynomial({f0, f1});
  BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 6), 5);
  BiorthogonalSystem scalar = build_biorthogonal(moment_matrix(lebesgue1(), 6), 5);
  for (int n = 0; n <= 5; ++n)
    for (int d = 0; d < n; ++d) {
      const Eigen::MatrixXd c = sys.p1[n].coeff(d);
      CHECK(std::abs(c(0, 1)) <= 1e-12);
      CHECK(std::abs(c(1, 0)) <= 1e-12);
      CHECK(c(0, 0) == doctest::Approx(scalar.p1[n].coeff(d)(0, 0)).epsilon(1e-10));
    }
}

TEST_CASE("quasi-determinant expressions match the factorization route") {
  for (const MatrixMeasure& m : {chebyshev_i2(), nonsymmetric2()}) {
    BlockMatrix mm = moment_matrix(m, 8);
    BiorthogonalSystem sys = build_biorthogonal(mm, 6);
    for (int n = 0; n <= 6; ++n) {
      auto [q1, q2] = quasidet_polynomial(mm, n);
      for (int d = 0; d <= n; ++d) {
        CHECK((q1.coeff(d) - sys.p1[n].coeff(d)).norm() <= 1e-9);
        CHECK((q2.coeff(d) - sys.p2[n].coeff(d)).norm() <= 1e-9);
      }
    }
  }
}

TEST_CASE("symmetric moment matrices make both families coincide") {
  BlockMatrix mm = moment_matrix(chebyshev_i2(), 7);
  BiorthogonalSystem sys = build_biorthogonal(mm, 6);
  for (int n = 0; n <= 6; ++n)
    for (int d = 0; d <= n; ++d)
      CHECK((sys.p1[n].coeff(d) - sys.p2[n].coeff(d)).norm() <= 1e-12);
}

TEST_CASE("bi-orthogonality holds under independent quadrature") {
  for (const MatrixMeasure& m : {chebyshev_i2(), nonsymmetric2()}) {
    BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 10), 8);
    double hmax = 0.0;
    for (const auto& h : sys.h) hmax = std::max(hmax, h.norm());
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= 8; ++k) {
        const Eigen::MatrixXd g = inner(m, sys.p1[n], sys.p2[k]);
        if (n == k)
          CHECK((g - sys.h[n]).norm() <= 1e-8 * hmax);
        else
          CHECK(g.norm() <= 1e-8 * hmax);
      }
  }
}

TEST_CASE("truncated orthogonality against plain powers") {
  MatrixMeasure m = nonsymmetric2();
  BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 8), 6);
  for (int n = 1; n <= 6; ++n)
    for (int mm = 0; mm < n; ++mm) {
      const Eigen::MatrixXd g =
          inner(m, sys.p1[n], MatrixPolynomial::monomial(2, mm));
      CHECK(g.norm() <= 1e-8);
    }
}

TEST_CASE("CD kernel base case and identities") {
  MatrixMeasure m = chebyshev_i2();
  BlockMatrix mm = moment_matrix(m, 9);
  BiorthogonalSystem sys = build_biorthogonal(mm, 8);

  // n = 0: K_0 = H_0^{-1}
  const Eigen::MatrixXd k0 = cd_kernel(sys, 0, {0.3, 0}, {0.9, 0}).real();
  CHECK((k0 - sys.h[0].inverse()).norm() <= 1e-12);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = u(rng), y = u(rng);
    for (int n : {2, 5}) {
      // ABC: K_n(x,y) = [I, .., I y^n] M_[n+1]^{-1} [I; ..; I x^n]
      const int p = 2;
      Eigen::MatrixXd chix((n + 1) * p, p), chiy((n + 1) * p, p);
      double xs = 1.0, ys = 1.0;
      for (int i = 0; i <= n; ++i) {
        chix.middleRows(i * p, p) = xs * Eigen::MatrixXd::Identity(p, p);
        chiy.middleRows(i * p, p) = ys * Eigen::MatrixXd::Identity(p, p);
        xs *= x;
        ys *= y;
      }
      const Eigen::MatrixXd kn = cd_kernel(sys, n, {x, 0}, {y, 0}).real();
      const Eigen::MatrixXd abc =
          chiy.transpose() *
          mm.truncated(n + 1, n + 1).data().partialPivLu().solve(chix);
      CHECK((kn - abc).norm() <= 1e-9 * (1.0 + abc.norm()));

      // CD identity
      const Eigen::MatrixXd lhs = (x - y) * kn;
      const Eigen::MatrixXd rhs =
          sys.p2[n].evaluate(y).transpose() *
              sys.h[n].partialPivLu().solve(sys.p1[n + 1].evaluate(x)) -
          sys.p2[n + 1].evaluate(y).transpose() *
              sys.h[n].partialPivLu().solve(sys.p1[n].evaluate(x));
      CHECK((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
  }
}

TEST_CASE("kernel at a matrix argument") {
  MatrixMeasure m = chebyshev_i2();
  BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 7), 6);

  const Eigen::MatrixXd k0 =
      cd_kernel_at_matrix(sys, 0, 0.4, 0.7 * Eigen::MatrixXd::Identity(2, 2));
  CHECK((k0 - sys.h[0].inverse()).norm() <= 1e-12);

  // scalar matrix argument reduces to the scalar sum
  const double a = 1.7, y = 0.3;
  const Eigen::MatrixXd ka =
      cd_kernel_at_matrix(sys, 3, y, a * Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2, 2);
  for (int k = 0; k <= 3; ++k)
    expect += sys.p2[k].evaluate(y) *
              sys.h[k].partialPivLu().solve(sys.p1[k].evaluate(a));
  CHECK((ka - expect).norm() <= 1e-12);

  // eigen-decomposition oracle for A = [[0,-1],[-1,0]] = Q diag(-1,1) Q^T:
  // every P1_m is a scalar polynomial times I2 here, so
  // P1_m(A) = Q diag(p(-1), p(1)) Q^T entrywise
  Eigen::MatrixXd amat(2, 2);
  amat << 0, -1, -1, 0;
  Eigen::MatrixXd q(2, 2);
  q << 1, 1, 1, -1;
  q /= std::sqrt(2.0);
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(2, 2);
  for (int k = 0; k <= 3; ++k) {
    Eigen::MatrixXd diag(2, 2);
    diag << sys.p1[k].evaluate(-1.0)(0, 0), 0, 0, sys.p1[k].evaluate(1.0)(0, 0);
    oracle += sys.p2[k].evaluate(y) *
              sys.h[k].partialPivLu().solve(q * diag * q.transpose());
  }
  const Eigen::MatrixXd got = cd_kernel_at_matrix(sys, 3, y, amat);
  CHECK((got - oracle).norm() <= 1e-10 * (1.0 + oracle.norm()));
}

TEST_CASE("Hankel input gives a block tridiagonal Jacobi matrix") {
  for (const MatrixMeasure& m : {chebyshev_i2(), nonsymmetric2()}) {
    BiorthogonalSystem sys = build_biorthogonal(moment_matrix(m, 9), 8);
    BlockMatrix j = jacobi_block_matrix(sys);
    double off = 0.0;
    for (int k = 0; k < j.rows(); ++k)
      for (int l = 0; l < j.cols(); ++l)
        if (std::abs(k - l) > 1) off = std::max(off, j.block(k, l).norm());
    CHECK(off <= 1e-10 * (1.0 + j.norm()));
  }
}

TEST_CASE("degenerate truncations are refused") {
  // measure with m0 = 0: first pivot singular
  BlockMatrix m(1, 2, 2);
  m.block(0, 0)(0, 0) = 0.0;
  m.block(0, 1)(0, 0) = 1.0;
  m.block(1, 0)(0, 0) = 1.0;
  m.block(1, 1)(0, 0) = 0.0;
  CHECK_THROWS_AS(build_biorthogonal(m, 1), SingularTruncation);
}
