#include "mop/block_matrix.hpp"

#include <Eigen/SVD>
#include <ostream>

#include "mop/matrix_polynomial.hpp"

namespace mop {

BlockMatrix::BlockMatrix(int p, Eigen::MatrixXd data)
    : p_(p), rows_(static_cast<int>(data.rows()) / p),
      cols_(static_cast<int>(data.cols()) / p), data_(std::move(data)) {
  if (rows_ * p_ != data_.rows() || cols_ * p_ != data_.cols())
    throw Error("BlockShape", "dense dimensions are not multiples of p");
}

BlockMatrix BlockMatrix::Identity(int p, int n) {
  return BlockMatrix(p, Eigen::MatrixXd::Identity(n * p, n * p));
}

BlockMatrix BlockMatrix::truncated(int n_rows, int n_cols) const {
  if (n_rows > rows_ || n_cols > cols_)
    throw InsufficientRows("truncation larger than the stored window");
  return BlockMatrix(p_, data_.topLeftCorner(n_rows * p_, n_cols * p_));
}

bool BlockMatrix::is_symmetric(double tol) const {
  if (!is_square()) return false;
  return (data_ - data_.transpose()).norm() <= tol * (1.0 + data_.norm());
}

double BlockMatrix::hankel_defect() const {
  double defect = 0.0;
  for (int k = 0; k < rows_; ++k)
    for (int l = 0; l < cols_; ++l) {
      // compare against the first representative of the anti-diagonal
      int s = k + l;
      int k0 = std::max(0, s - cols_ + 1);
      int l0 = s - k0;
      defect = std::max(defect, (block(k, l) - block(k0, l0)).norm());
    }
  return defect;
}

void BlockMatrix::to_csv(std::ostream& os) const {
  os << p_ << "," << rows_ << "," << cols_ << "\n";
  for (Eigen::Index i = 0; i < data_.rows(); ++i) {
    for (Eigen::Index j = 0; j < data_.cols(); ++j) {
      if (j) os << ",";
      os << data_(i, j);
    }
    os << "\n";
  }
}

std::vector<Eigen::MatrixXd> GaussBorelFactorization::h_blocks() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(h.rows());
  for (int k = 0; k < h.rows(); ++k) out.push_back(h.block(k, k));
  return out;
}

BlockMatrix GaussBorelFactorization::reconstruct() const {
  BlockMatrix s1_inv = invert_unit_lower(s1);
  BlockMatrix s2_inv = invert_unit_lower(s2);
  Eigen::MatrixXd m = s1_inv.data() * h.data() * s2_inv.data().transpose();
  return BlockMatrix(s1.p(), std::move(m));
}

namespace {

// extended-precision product S1 * M * S2^T for the refinement residual
Eigen::MatrixXd residual_product(const Eigen::MatrixXd& s1,
                                 const Eigen::MatrixXd& m,
                                 const Eigen::MatrixXd& s2) {
  const Eigen::Index n = m.rows();
  std::vector<long double> x(n * n, 0.0L);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index j = 0; j < n; ++j) {
      long double acc = 0.0L;
      for (Eigen::Index b = 0; b < n; ++b)
        acc += static_cast<long double>(m(a, b)) *
               static_cast<long double>(s2(j, b));
      x[a * n + j] = acc;
    }
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      long double acc = 0.0L;
      for (Eigen::Index a = 0; a < n; ++a)
        acc += static_cast<long double>(s1(i, a)) * x[a * n + j];
      r(i, j) = static_cast<double>(acc);
    }
  return r;
}

template <typename S>
using DenseT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <typename S>
struct DenseFactors {
  DenseT<S> s1, s2, h;
};

// one unpivoted block elimination pass over any scalar type, with scalar
// diagonal equilibration (undone exactly on the factors) and the block
// Cholesky branch for symmetric input
template <typename S>
DenseFactors<S> factorize_dense(DenseT<S> a, int p, double tol) {
  const int np = static_cast<int>(a.rows());
  const int n = np / p;
  const S sym_gap = (a - a.transpose()).cwiseAbs().maxCoeff();
  const bool symmetric = sym_gap <= 1e-13 * a.norm();

  Eigen::Matrix<S, Eigen::Dynamic, 1> scale(np);
  for (int i = 0; i < np; ++i) {
    using std::abs;
    using std::sqrt;
    const S di = abs(a(i, i));
    scale(i) = di > S(0) ? S(1) / sqrt(di) : S(1);
  }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) a(i, j) *= scale(i) * scale(j);
  if (symmetric) a = ((a + a.transpose()) / S(2)).eval();

  DenseT<S> l = DenseT<S>::Identity(np, np);
  DenseT<S> u = DenseT<S>::Identity(np, np);
  DenseT<S> h = DenseT<S>::Zero(np, np);

  for (int k = 0; k < n; ++k) {
    DenseT<S> d = a.block(k * p, k * p, p, p);
    Eigen::JacobiSVD<DenseT<S>> svd(d);
    const S smax = svd.singularValues()(0);
    const S smin = svd.singularValues()(p - 1);
    if (smax == S(0) || smin < S(tol) * smax)
      throw SingularTruncation(k + 1,
                               "pivot block " + std::to_string(k) +
                                   " is singular: the leading truncation with " +
                                   std::to_string(k + 1) +
                                   " block rows has det close to zero");
    h.block(k * p, k * p, p, p) = d;
    const DenseT<S> d_inv = Eigen::PartialPivLU<DenseT<S>>(d).inverse();
    for (int i = k + 1; i < n; ++i)
      l.block(i * p, k * p, p, p) = a.block(i * p, k * p, p, p) * d_inv;
    if (symmetric) {
      // block Cholesky case: U = L^T and the Schur complement is kept
      // exactly symmetric by mirroring the upper triangle
      for (int j = k + 1; j < n; ++j)
        u.block(k * p, j * p, p, p) = l.block(j * p, k * p, p, p).transpose();
      for (int i = k + 1; i < n; ++i) {
        const DenseT<S> lid = l.block(i * p, k * p, p, p) * d;
        for (int j = i; j < n; ++j) {
          a.block(i * p, j * p, p, p) -=
              lid * l.block(j * p, k * p, p, p).transpose();
          if (j > i)
            a.block(j * p, i * p, p, p) =
                a.block(i * p, j * p, p, p).transpose();
        }
      }
    } else {
      for (int j = k + 1; j < n; ++j)
        u.block(k * p, j * p, p, p) = d_inv * a.block(k * p, j * p, p, p);
      for (int i = k + 1; i < n; ++i) {
        const DenseT<S> lid = l.block(i * p, k * p, p, p) * d;
        for (int j = k + 1; j < n; ++j)
          a.block(i * p, j * p, p, p) -= lid * u.block(k * p, j * p, p, p);
      }
    }
  }

  // invert the unitriangular factors by forward substitution
  auto invert_unit = [&](const DenseT<S>& s) {
    DenseT<S> inv = DenseT<S>::Identity(np, np);
    for (int i = 1; i < n; ++i)
      for (int j = i - 1; j >= 0; --j) {
        DenseT<S> acc = DenseT<S>::Zero(p, p);
        for (int k = j; k < i; ++k)
          acc += s.block(i * p, k * p, p, p) * inv.block(k * p, j * p, p, p);
        inv.block(i * p, j * p, p, p) = -acc;
      }
    return inv;
  };

  DenseFactors<S> out;
  out.s1 = invert_unit(l);
  out.h = std::move(h);
  auto unscale_lower = [&](DenseT<S>& s) {
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < i; ++j) s(i, j) *= scale(j) / scale(i);
  };
  unscale_lower(out.s1);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) out.h(i, j) /= scale(i) * scale(j);
  if (symmetric) {
    out.s2 = out.s1;
  } else {
    out.s2 = invert_unit(DenseT<S>(u.transpose()));
    unscale_lower(out.s2);
  }
  return out;
}

GaussBorelFactorization factorize_once(const BlockMatrix& m, double tol) {
  if (!m.is_square())
    throw Error("BlockShape", "Gauss-Borel factorization needs a square input");
  DenseFactors<double> f = factorize_dense<double>(m.data(), m.p(), tol);
  GaussBorelFactorization fact;
  fact.s1 = BlockMatrix(m.p(), std::move(f.s1));
  fact.s2 = BlockMatrix(m.p(), std::move(f.s2));
  fact.h = BlockMatrix(m.p(), std::move(f.h));
  return fact;
}

}  // namespace

GaussBorelFactorization gauss_borel_factorize(const BlockMatrix& m, double tol) {
  GaussBorelFactorization fact = factorize_once(m, tol);
  // one refinement pass: S1 M S2^T is block diagonal up to the factorization
  // error; refactorizing it (residual taken in extended precision) and
  // composing recovers several digits on badly conditioned windows
  const int p = m.p();
  BlockMatrix r(p, residual_product(fact.s1.data(), m.data(), fact.s2.data()));
  GaussBorelFactorization corr = factorize_once(r, tol);
  GaussBorelFactorization out;
  out.s1 = BlockMatrix(p, corr.s1.data() * fact.s1.data());
  out.s2 = m.is_symmetric(1e-13)
               ? out.s1
               : BlockMatrix(p, corr.s2.data() * fact.s2.data());
  out.h = std::move(corr.h);
  return out;
}

GaussBorelFactorization gauss_borel_factorize_xp(const MatrixXld& data, int p,
                                                 double tol) {
  DenseFactors<long double> f = factorize_dense<long double>(data, p, tol);
  GaussBorelFactorization fact;
  fact.s1 = BlockMatrix(p, f.s1.cast<double>());
  fact.s2 = BlockMatrix(p, f.s2.cast<double>());
  fact.h = BlockMatrix(p, f.h.cast<double>());
  return fact;
}

Eigen::MatrixXd last_quasideterminant(const BlockMatrix& m, double tol) {
  if (!m.is_square() || m.rows() < 2)
    throw Error("BlockShape", "last quasi-determinant needs >= 2 block rows");
  const int p = m.p();
  const int n = m.rows();
  const Eigen::MatrixXd a = m.data().topLeftCorner((n - 1) * p, (n - 1) * p);
  const Eigen::MatrixXd b = m.data().topRightCorner((n - 1) * p, p);
  const Eigen::MatrixXd c = m.data().bottomLeftCorner(p, (n - 1) * p);
  const Eigen::MatrixXd d = m.data().bottomRightCorner(p, p);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) < tol * sv(0))
    throw SingularLeadingBlock("leading principal part is numerically singular");
  return d - c * svd.solve(b);
}

BlockMatrix apply_poly_shift(const MatrixPolynomial& w, const BlockMatrix& m,
                             int n_rows) {
  const int deg = w.degree();
  if (n_rows < 0) n_rows = m.rows() - deg;
  if (m.rows() < n_rows + deg)
    throw InsufficientRows("apply_poly_shift needs " +
                           std::to_string(n_rows + deg) + " block rows, have " +
                           std::to_string(m.rows()));
  if (w.p() != m.p()) throw Error("BlockShape", "block sizes disagree");
  BlockMatrix out(m.p(), n_rows, m.cols());
  for (int k = 0; k < n_rows; ++k)
    for (int l = 0; l < m.cols(); ++l) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m.p(), m.p());
      for (int j = 0; j <= deg; ++j) acc += w.coeff(j) * m.block(k + j, l);
      out.block(k, l) = acc;
    }
  return out;
}

BlockMatrix invert_unit_lower(const BlockMatrix& s) {
  const int p = s.p();
  const int n = s.rows();
  BlockMatrix inv(p, n, n);
  for (int k = 0; k < n; ++k) inv.block(k, k) = Eigen::MatrixXd::Identity(p, p);
  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= 0; --j) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
      for (int k = j; k < i; ++k) acc += s.block(i, k) * inv.block(k, j);
      inv.block(i, j) = -acc;
    }
  return inv;
}

}  // namespace mop
