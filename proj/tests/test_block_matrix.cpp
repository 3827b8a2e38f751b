#include <doctest.h>

#include <random>
#include <sstream>

#include "mop/block_matrix.hpp"
#include "mop/matrix_polynomial.hpp"
#include "mop/measures.hpp"

using namespace mop;

namespace {

BlockMatrix lebesgue_moment_matrix(int n) {
  BlockMatrix m(1, n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) m.block(k, l)(0, 0) = 1.0 / (k + l + 1);
  return m;
}

// random quasi-definite block matrix built as L D U^T
BlockMatrix random_quasidefinite(int p, int n, std::mt19937& rng, bool symmetric) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n * p, n * p);
  Eigen::MatrixXd ut = Eigen::MatrixXd::Identity(n * p, n * p);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n * p, n * p);
  for (int i = 0; i < n * p; ++i)
    for (int j = 0; j < (i / p) * p; ++j) {
      l(i, j) = u(rng);
      ut(i, j) = symmetric ? l(i, j) : u(rng);
    }
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd b(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) b(i, j) = u(rng);
    Eigen::MatrixXd blk = b * b.transpose() + 2.0 * Eigen::MatrixXd::Identity(p, p);
    if (!symmetric) blk += 0.3 * (b - Eigen::MatrixXd(b.transpose()));
    d.block(k * p, k * p, p, p) = blk;
  }
  return BlockMatrix(p, l * d * ut.transpose());
}

}  // namespace

TEST_CASE("factorization of a block identity is trivial") {
  BlockMatrix m = BlockMatrix::Identity(2, 3);
  auto fact = gauss_borel_factorize(m);
  CHECK((fact.s1.data() - Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
  CHECK((fact.s2.data() - Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
  CHECK((fact.h.data() - Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("Lebesgue 2x2 moment matrix factorizes by hand") {
  BlockMatrix m = lebesgue_moment_matrix(2);
  auto fact = gauss_borel_factorize(m);
  CHECK(fact.h_block(0)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fact.h_block(1)(0, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  CHECK(fact.s1.block(1, 0)(0, 0) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("Chebyshev x I2 block Hankel factorization reconstructs") {
  MatrixMeasure measure;
  measure.p = 2;
  measure.base.family = WeightFamily::chebyshev1;
  BlockMatrix m = moment_matrix(measure, 4);
  auto fact = gauss_borel_factorize(m);
  CHECK((fact.reconstruct().data() - m.data()).norm() <= 1e-12 * m.norm());
  CHECK((fact.s1.data() - fact.s2.data()).norm() <= 1e-12);
}

TEST_CASE("factor-reconstruct round trip and uniqueness on random input") {
  std::mt19937 rng(7);
  for (bool symmetric : {false, true}) {
    BlockMatrix m = random_quasidefinite(2, 5, rng, symmetric);
    auto fact = gauss_borel_factorize(m);
    BlockMatrix r = fact.reconstruct();
    CHECK((r.data() - m.data()).norm() <= 1e-10 * m.norm());
    auto refact = gauss_borel_factorize(r);
    CHECK((refact.s1.data() - fact.s1.data()).norm() <=
          1e-8 * (1.0 + fact.s1.norm()));
    CHECK((refact.s2.data() - fact.s2.data()).norm() <=
          1e-8 * (1.0 + fact.s2.norm()));
    CHECK((refact.h.data() - fact.h.data()).norm() <= 1e-8 * fact.h.norm());
    if (symmetric) {
      CHECK((fact.s1.data() - fact.s2.data()).norm() <= 1e-10 * fact.s1.norm());
      CHECK((fact.h.data() - fact.h.data().transpose()).norm() <=
            1e-10 * fact.h.norm());
    }
  }
}

TEST_CASE("singular pivot aborts loudly") {
  BlockMatrix m(1, 2, 2);
  m.block(0, 0)(0, 0) = 0.0;
  m.block(0, 1)(0, 0) = 1.0;
  m.block(1, 0)(0, 0) = 1.0;
  m.block(1, 1)(0, 0) = 1.0;
  CHECK_THROWS_AS(gauss_borel_factorize(m), SingularTruncation);
  try {
    gauss_borel_factorize(m);
  } catch (const SingularTruncation& e) {
    CHECK(e.blocks == 1);
  }
}

TEST_CASE("last quasi-determinant is the trailing Schur complement") {
  BlockMatrix m(1, 2, 2);
  m.block(0, 0)(0, 0) = 2.0;
  m.block(0, 1)(0, 0) = 1.0;
  m.block(1, 0)(0, 0) = 1.0;
  m.block(1, 1)(0, 0) = 1.0;
  CHECK(last_quasideterminant(m)(0, 0) == doctest::Approx(0.5).epsilon(1e-14));

  BlockMatrix id = BlockMatrix::Identity(2, 2);
  CHECK((last_quasideterminant(id) - Eigen::MatrixXd::Identity(2, 2)).norm() ==
        0.0);
}

TEST_CASE("H_k equals the last quasi-determinant of M_[k+1]") {
  BlockMatrix m = lebesgue_moment_matrix(5);
  auto fact = gauss_borel_factorize(m);
  for (int k = 0; k <= 3; ++k) {
    Eigen::MatrixXd theta = last_quasideterminant(m.truncated(k + 2, k + 2));
    CHECK((theta - fact.h_block(k + 1)).norm() <= 1e-12 * std::max(1.0, theta.norm()));
  }
  // k = 0 via the 1-block truncation is the moment itself
  CHECK(fact.h_block(0)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("apply_poly_shift with W = I x shifts one block row up") {
  std::mt19937 rng(3);
  BlockMatrix m = random_quasidefinite(2, 4, rng, false);
  MatrixPolynomial w = MatrixPolynomial::monomial(2, 1);
  BlockMatrix shifted = apply_poly_shift(w, m);
  REQUIRE(shifted.rows() == 3);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 4; ++l)
      CHECK((shifted.block(k, l) - m.block(k + 1, l)).norm() == 0.0);
}

TEST_CASE("apply_poly_shift matches the direct integral for x - a") {
  const double a = 0.7;
  BlockMatrix m = lebesgue_moment_matrix(6);
  MatrixPolynomial w({Eigen::MatrixXd::Constant(1, 1, -a),
                      Eigen::MatrixXd::Identity(1, 1)});
  BlockMatrix shifted = apply_poly_shift(w, m);
  for (int n = 0; n < shifted.cols(); ++n) {
    const double expect = 1.0 / (n + 2) - a / (n + 1);
    CHECK(shifted.block(0, n)(0, 0) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK_THROWS_AS(apply_poly_shift(w, m, 6), InsufficientRows);
}

TEST_CASE("apply_poly_shift agrees with quadrature of W d mu") {
  MatrixMeasure measure;
  measure.p = 2;
  measure.base.family = WeightFamily::chebyshev1;
  Eigen::MatrixXd a(2, 2);
  a << 0.3, -0.1, 0.2, 0.5;
  MatrixPolynomial w = MatrixPolynomial::linear(a);

  BlockMatrix m = moment_matrix(measure, 6);
  BlockMatrix via_shift = apply_poly_shift(w, m, 5).truncated(5, 5);
  BlockMatrix via_quad = perturbed_moment_matrix(measure, w, 5);
  CHECK((via_shift.data() - via_quad.data()).norm() <= 1e-10 * via_quad.norm());
}

TEST_CASE("Hankel symmetry Lambda M = M Lambda^T on the window") {
  MatrixMeasure measure;
  measure.p = 2;
  measure.base.family = WeightFamily::lebesgue;
  BlockMatrix m = moment_matrix(measure, 5);
  CHECK(m.hankel_defect() == 0.0);
  // Lambda M = M Lambda^T blockwise: m_{k+1,l} == m_{k,l+1}
  for (int k = 0; k + 1 < 5; ++k)
    for (int l = 0; l + 1 < 5; ++l)
      CHECK((m.block(k + 1, l) - m.block(k, l + 1)).norm() == 0.0);
}

TEST_CASE("csv dump carries the header and all scalars") {
  BlockMatrix m = BlockMatrix::Identity(2, 1);
  std::ostringstream os;
  m.to_csv(os);
  CHECK(os.str() == "2,1,1\n1,0\n0,1\n");
}
