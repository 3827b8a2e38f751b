#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "mop/errors.hpp"

namespace mop {

class MatrixPolynomial;

/// Finite truncation of a semi-infinite matrix of p x p real blocks,
/// stored dense. Block (k,l) is the p x p sub-array at offset (k*p, l*p).
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(int p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols),
        data_(Eigen::MatrixXd::Zero(rows * p, cols * p)) {}
  BlockMatrix(int p, Eigen::MatrixXd data);

  static BlockMatrix Identity(int p, int n);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Eigen::Block<Eigen::MatrixXd> block(int k, int l) {
    return data_.block(k * p_, l * p_, p_, p_);
  }
  Eigen::Block<const Eigen::MatrixXd> block(int k, int l) const {
    return data_.block(k * p_, l * p_, p_, p_);
  }

  Eigen::MatrixXd& data() { return data_; }
  const Eigen::MatrixXd& data() const { return data_; }

  /// Leading principal truncation with n block rows/cols.
  BlockMatrix truncated(int n_rows, int n_cols) const;

  BlockMatrix transpose() const { return BlockMatrix(p_, data_.transpose()); }

  double norm() const { return data_.norm(); }

  bool is_symmetric(double tol) const;
  /// Block Hankel test: block (k,l) == block (k',l') whenever k+l == k'+l'.
  double hankel_defect() const;

  /// Debug dump, row-major scalars with a `p,rows,cols` header line.
  void to_csv(std::ostream& os) const;

 private:
  int p_ = 1;
  int rows_ = 0;
  int cols_ = 0;
  Eigen::MatrixXd data_;
};

/// M = S1^{-1} H S2^{-T} with S1, S2 lower block unitriangular and H block
/// diagonal with nonsingular diagonal blocks.
struct GaussBorelFactorization {
  BlockMatrix s1;
  BlockMatrix s2;
  BlockMatrix h;

  int size() const { return h.rows(); }
  Eigen::MatrixXd h_block(int k) const { return h.block(k, k); }
  std::vector<Eigen::MatrixXd> h_blocks() const;

  /// S1^{-1} H S2^{-T}; should reproduce the factored matrix.
  BlockMatrix reconstruct() const;
};

/// Unpivoted block LU (Gauss-Borel) factorization of a square block matrix.
/// A pivot block counts as singular when its smallest singular value is
/// below tol times its largest; that aborts with SingularTruncation.
GaussBorelFactorization gauss_borel_factorize(const BlockMatrix& m,
                                              double tol = 1e-10);

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// Extended-precision variant for oracle use by tests and presets: the same
/// elimination over long double input, factors rounded to double on return.
GaussBorelFactorization gauss_borel_factorize_xp(const MatrixXld& data, int p,
                                                 double tol = 1e-10);

/// Last quasi-determinant Theta_* = D - C A^{-1} B, the Schur complement of
/// the trailing block. Throws SingularLeadingBlock when A is singular.
Eigen::MatrixXd last_quasideterminant(const BlockMatrix& m, double tol = 1e-12);

/// Action of W(Lambda) on the block rows: output block (k,l) =
/// sum_j A_j M_{k+j,l}. `n_rows` <= m.rows() - deg W; -1 means the maximum.
BlockMatrix apply_poly_shift(const MatrixPolynomial& w, const BlockMatrix& m,
                             int n_rows = -1);

/// Inverse of a lower block unitriangular matrix by forward substitution.
BlockMatrix invert_unit_lower(const BlockMatrix& s);

}  // namespace mop
