#include "mop/christoffel.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <limits>

namespace mop {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m, double tol,
                        const char* what) {
  const double scale = std::max(1.0, m.norm());
  const double imag = m.imag().cwiseAbs().maxCoeff();
  if (imag > tol * scale)
    throw NonRealResult(std::string(what) + " kept imaginary part " +
                        std::to_string(imag));
  return m.real();
}

MatrixPolynomial realify_poly(const std::vector<Eigen::MatrixXcd>& coeffs,
                              double tol, const char* what) {
  double scale = 1.0, imag = 0.0;
  for (const auto& c : coeffs) {
    scale = std::max(scale, c.norm());
    imag = std::max(imag, c.imag().cwiseAbs().maxCoeff());
  }
  if (imag > tol * scale)
    throw NonRealResult(std::string(what) + " kept imaginary part " +
                        std::to_string(imag));
  std::vector<Eigen::MatrixXd> real;
  real.reserve(coeffs.size());
  for (const auto& c : coeffs) real.push_back(c.real());
  return MatrixPolynomial(std::move(real));
}

Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& m, int k,
                                 const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) < 1e-12 * sv(0))
    throw SingularPi(k, std::string(what) + " is numerically singular at k = " +
                            std::to_string(k));
  return m.partialPivLu().inverse();
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// Transposed kernel sum K~_n(y, A) = sum_m (P^[2]_m(y))^T H_m^{-1} P^[1]_m(A),
// the object the P^[2] branch of the degree-one formula contracts against.
MatrixPolynomial transposed_kernel_at_matrix(const BiorthogonalSystem& sys,
                                             int n, const Eigen::MatrixXd& a) {
  const int p = sys.p;
  std::vector<Eigen::MatrixXd> coeffs(n + 1, Eigen::MatrixXd::Zero(p, p));
  for (int m = 0; m <= n; ++m) {
    const Eigen::MatrixXd tail =
        sys.h[m].partialPivLu().solve(sys.p1[m].evaluate_at_matrix(a));
    for (int d = 0; d <= m; ++d)
      coeffs[d] += sys.p2[m].coeff(d).transpose() * tail;
  }
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace

Eigen::MatrixXcd SpectralJet::big_pi(int k, int n_deg) const {
  Eigen::MatrixXcd out(n_deg * p, np);
  for (int j = 0; j < n_deg; ++j) out.middleRows(j * p, p) = pi(k + j);
  return out;
}

SpectralJet spectral_jets(const BiorthogonalSystem& sys,
                          const SpectralData& spec, int k_lo, int k_hi) {
  if (!spec.has_chains())
    throw Error("MissingChains", "spectral data lacks Jordan chains");
  if (k_hi > sys.n_max)
    throw DegreeWindow("jets up to degree " + std::to_string(k_hi) +
                       " need a system of that degree, have " +
                       std::to_string(sys.n_max));
  const int p = sys.p;

  int np = 0, max_kappa = 1;
  for (const auto& ev : spec.eigenvalues)
    for (const auto& ch : ev.chains) {
      np += ch.length();
      max_kappa = std::max(max_kappa, ch.length());
    }

  SpectralJet jet;
  jet.p = p;
  jet.np = np;
  jet.k_min = k_lo;

  for (int k = k_lo; k <= k_hi; ++k) {
    // exact derivatives of P^[1]_k by coefficient shifts
    std::vector<MatrixPolynomial> ders{sys.p1[k]};
    for (int s = 1; s < max_kappa; ++s) ders.push_back(ders.back().derivative());

    Eigen::MatrixXcd row(p, np);
    int col = 0;
    for (const auto& ev : spec.eigenvalues) {
      std::vector<Eigen::MatrixXcd> pk_at;  // P^(s)(x_i)
      for (const auto& d : ders) pk_at.push_back(d.evaluate(ev.value));
      for (const auto& chain : ev.chains) {
        const int kappa = chain.length();
        for (int r = 0; r < kappa; ++r) {
          // d^r(P_k v)(x_i) = sum_s C(r,s) P^(s)(x_i) (r-s)! v_{r-s}
          Eigen::VectorXcd val = Eigen::VectorXcd::Zero(p);
          double fact = 1.0;  // (r-s)! walked downward
          for (int m = 0; m <= r; ++m) {
            // m = r - s
            const int s = r - m;
            val += binomial(r, s) * fact * (pk_at[s] * chain.vectors[m]);
            fact *= (m + 1);
          }
          row.col(col++) = val;
        }
      }
    }
    jet.rows.push_back(std::move(row));
  }
  return jet;
}

TransformedPolynomial christoffel_transform(const BiorthogonalSystem& sys,
                                            const MatrixPolynomial& w,
                                            const SpectralData& spec, int k,
                                            double tol) {
  if (!w.is_monic())
    throw NotMonic("Christoffel transformation requires a monic perturbation");
  const int n_deg = w.degree();
  const int p = sys.p;
  if (k + n_deg > sys.n_max)
    throw DegreeWindow("transform at degree " + std::to_string(k) +
                       " needs system degree " + std::to_string(k + n_deg));

  SpectralJet jets = spectral_jets(sys, spec, 0, k + n_deg);
  if (jets.np != n_deg * p)
    throw MultiplicityMismatch("chains provide " + std::to_string(jets.np) +
                               " columns, expected " + std::to_string(n_deg * p));

  const Eigen::MatrixXcd pi_inv =
      checked_inverse(jets.big_pi(k, n_deg), k, "Pi_{k,N}");
  const Eigen::MatrixXcd conn_row = -(jets.pi(k + n_deg) * pi_inv);  // p x Np

  // numerator P_{k+N}(x) + sum_m C_m P_{k+m}(x) = P^_k(x) W(x)
  std::vector<Eigen::MatrixXcd> num(k + n_deg + 1,
                                    Eigen::MatrixXcd::Zero(p, p));
  for (int d = 0; d <= k + n_deg; ++d)
    num[d] = sys.p1[k + n_deg].coeff(d).cast<Complex>();
  for (int m = 0; m < n_deg; ++m) {
    const Eigen::MatrixXcd cm = conn_row.middleCols(m * p, p);
    for (int d = 0; d <= k + m; ++d)
      num[d] += cm * sys.p1[k + m].coeff(d).cast<Complex>();
  }

  TransformedPolynomial out{MatrixPolynomial(p), Eigen::MatrixXd(), MatrixPolynomial(p)};
  MatrixPolynomial numerator = realify_poly(num, 1e-9, "Christoffel numerator");
  out.p1_hat = divide_right(numerator, w, tol);
  out.h_hat = realify(conn_row.leftCols(p) * sys.h[k].cast<Complex>(), 1e-9,
                      "H^_k");

  // second family through the kernel jets gamma_k
  const Eigen::MatrixXcd pi1_inv =
      checked_inverse(jets.big_pi(k + 1, n_deg), k + 1, "Pi_{k+1,N}");
  const Eigen::MatrixXcd z = pi1_inv.rightCols(p);  // Np x p
  std::vector<Eigen::MatrixXcd> p2t(k + 1, Eigen::MatrixXcd::Zero(p, p));
  for (int m = 0; m <= k; ++m) {
    const Eigen::MatrixXcd tail =
        sys.h[m].cast<Complex>().partialPivLu().solve(jets.pi(m)) * z *
        out.h_hat.cast<Complex>();
    for (int d = 0; d <= m; ++d)
      p2t[d] -= sys.p2[m].coeff(d).transpose().cast<Complex>() * tail;
  }
  for (auto& c : p2t) c.transposeInPlace();
  out.p2_hat = realify_poly(p2t, 1e-9, "P^[2] transform");
  return out;
}

TransformedPolynomial degree_one_transform(const BiorthogonalSystem& sys,
                                           const Eigen::MatrixXd& a, int k,
                                           double tol) {
  const int p = sys.p;
  if (k + 1 > sys.n_max)
    throw DegreeWindow("degree-one transform at k = " + std::to_string(k) +
                       " needs system degree " + std::to_string(k + 1));

  const Eigen::MatrixXd pk_a = sys.p1[k].evaluate_at_matrix(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pk_a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(p - 1) < tol * sv(0))
    throw SingularPA("P^[1]_k(A) is numerically singular at k = " +
                     std::to_string(k));
  const Eigen::MatrixXd ratio =
      sys.p1[k + 1].evaluate_at_matrix(a) * pk_a.partialPivLu().inverse();

  TransformedPolynomial out{MatrixPolynomial(p), Eigen::MatrixXd(), MatrixPolynomial(p)};
  MatrixPolynomial numerator = sys.p1[k + 1] - ratio * sys.p1[k];
  out.p1_hat = divide_right(numerator, MatrixPolynomial::linear(a), 1e-8);
  out.h_hat = -ratio * sys.h[k];
  // (P^[2]_k(y))^T = K~_k(y,A) [P^[1]_k(A)]^{-1} H_k
  const Eigen::MatrixXd tail = pk_a.partialPivLu().solve(sys.h[k]);
  MatrixPolynomial kt = transposed_kernel_at_matrix(sys, k, a) * tail;
  std::vector<Eigen::MatrixXd> p2c;
  p2c.reserve(kt.degree() + 1);
  for (int d = 0; d <= kt.degree(); ++d)
    p2c.push_back(kt.coeff(d).transpose());
  out.p2_hat = MatrixPolynomial(std::move(p2c));
  return out;
}

ConnectionData connection_matrices(const BiorthogonalSystem& orig,
                                   const BiorthogonalSystem& perturbed,
                                   const MatrixPolynomial& w, double tol) {
  const int p = orig.p;
  const int n_deg = w.degree();
  const int window = std::min(orig.n_max, perturbed.n_max);
  const int k_rows = window - n_deg + 1;
  if (k_rows < 1)
    throw DegreeWindow("truncations cannot host a band of width " +
                       std::to_string(n_deg));

  // S factors on the common windows
  const int n1 = orig.n_max + 1;
  BlockMatrix s1(p, n1, n1), s2(p, n1, n1);
  for (int k = 0; k < n1; ++k)
    for (int l = 0; l <= k; ++l) {
      s1.block(k, l) = orig.p1[k].coeff(l);
      s2.block(k, l) = orig.p2[k].coeff(l);
    }
  const int n2 = perturbed.n_max + 1;
  BlockMatrix s1h(p, n2, n2), s2h(p, n2, n2);
  for (int k = 0; k < n2; ++k)
    for (int l = 0; l <= k; ++l) {
      s1h.block(k, l) = perturbed.p1[k].coeff(l);
      s2h.block(k, l) = perturbed.p2[k].coeff(l);
    }
  BlockMatrix s1_inv = invert_unit_lower(s1);
  BlockMatrix s2h_inv = invert_unit_lower(s2h);

  // omega1 = S1^ W(Lambda) S1^{-1}; rows 0..k_rows-1 are exact
  Eigen::MatrixXd omega1 = Eigen::MatrixXd::Zero(k_rows * p, n1 * p);
  {
    // (W(Lambda) S1^{-1})_{i,l} = sum_j A_{j-i} (S1^{-1})_{j,l}
    Eigen::MatrixXd ws = Eigen::MatrixXd::Zero(n1 * p, n1 * p);
    for (int i = 0; i < n1; ++i)
      for (int l = 0; l < n1; ++l) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
        for (int j = std::max(i, l); j <= std::min(i + n_deg, n1 - 1); ++j)
          acc += w.coeff(j - i) * s1_inv.block(j, l);
        ws.block(i * p, l * p, p, p) = acc;
      }
    for (int k = 0; k < k_rows; ++k)
      for (int l = 0; l < n1; ++l) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
        for (int i = 0; i <= k; ++i)
          acc += s1h.block(k, i) * ws.block(i * p, l * p, p, p);
        omega1.block(k * p, l * p, p, p) = acc;
      }
  }

  ConnectionData conn;
  conn.n_deg = n_deg;
  conn.w = w;

  const double scale = std::max(1.0, omega1.norm());
  for (int k = 0; k < k_rows; ++k) {
    for (int l = 0; l < n1; ++l) {
      const Eigen::MatrixXd blk = omega1.block(k * p, l * p, p, p);
      if (l < k || l > k + n_deg)
        conn.band_residual = std::max(conn.band_residual, blk.norm() / scale);
      if (l == k + n_deg)
        conn.band_residual =
            std::max(conn.band_residual,
                     (blk - Eigen::MatrixXd::Identity(p, p)).norm());
    }
    std::vector<Eigen::MatrixXd> row;
    for (int l = k; l < k + n_deg; ++l)
      row.push_back(omega1.block(k * p, l * p, p, p));
    conn.omega1.push_back(std::move(row));
    conn.h_hat.push_back(perturbed.h[k]);
    conn.h.push_back(orig.h[k]);
  }

  // omega2 = (S2 S2^^{-1})^T on the common window
  const int t_window = std::min(n1, n2);
  for (int k = 0; k < k_rows; ++k) {
    std::vector<Eigen::MatrixXd> row;
    for (int l = k; l <= k + n_deg; ++l) {
      if (l >= t_window)
        throw DegreeWindow("omega2 band leaves the common truncation");
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
      for (int m = k; m <= l; ++m)
        acc += s2.block(l, m) * s2h_inv.block(m, k);
      row.push_back(acc.transpose());
    }
    conn.omega2.push_back(std::move(row));
  }

  // invariants: omega1_{k,k} = H^_k H_k^{-1} and H^ omega2 = omega1 H
  for (int k = 0; k < k_rows; ++k) {
    const Eigen::MatrixXd d =
        perturbed.h[k] * orig.h[k].partialPivLu().inverse();
    const Eigen::MatrixXd o_kk = n_deg > 0
                                     ? conn.omega1[k][0]
                                     : Eigen::MatrixXd::Identity(p, p);
    conn.diag_residual =
        std::max(conn.diag_residual,
                 (o_kk - d).norm() / std::max(1.0, d.norm()));
    for (int j = 0; j <= n_deg; ++j) {
      const Eigen::MatrixXd lhs = perturbed.h[k] * conn.omega2[k][j];
      const Eigen::MatrixXd o1 =
          j < n_deg ? conn.omega1[k][j] : Eigen::MatrixXd::Identity(p, p);
      const Eigen::MatrixXd rhs = o1 * orig.h[k + j];
      conn.relation_residual =
          std::max(conn.relation_residual,
                   (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  }
  (void)tol;
  return conn;
}

PerturbedCdResidual perturbed_cd_relation_check(
    const BiorthogonalSystem& orig, const BiorthogonalSystem& perturbed,
    const ConnectionData& conn, int n, double x, double y) {
  const int p = orig.p;
  const int n_deg = conn.n_deg;
  if (n + n_deg > orig.n_max || n > perturbed.n_max || n >= conn.rows())
    throw DegreeWindow("perturbed CD check needs degrees up to n+N");

  const Eigen::MatrixXd kn =
      cd_kernel(orig, n, Complex(x, 0), Complex(y, 0)).real();
  const Eigen::MatrixXd kn_hat =
      cd_kernel(perturbed, n, Complex(x, 0), Complex(y, 0)).real();

  // middle term: rows k = n-N+1..n of the band, P^[2]_j = 0 for j < 0
  Eigen::MatrixXd middle = Eigen::MatrixXd::Zero(p, p);
  for (int k = std::max(0, n - n_deg + 1); k <= n; ++k) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(p, p);
    for (int l = n + 1; l <= k + n_deg; ++l) {
      const Eigen::MatrixXd o1 = l - k < n_deg
                                     ? conn.omega1[k][l - k]
                                     : Eigen::MatrixXd::Identity(p, p);
      v += o1 * orig.p1[l].evaluate(x);
    }
    middle += perturbed.p2[k].evaluate(y).transpose() *
              perturbed.h[k].partialPivLu().solve(v);
  }

  PerturbedCdResidual res;
  res.statement = (kn + middle - kn_hat * conn.w.evaluate(x)).norm();
  if (n + 1 <= perturbed.n_max) {
    const Eigen::MatrixXd kn1_hat =
        cd_kernel(perturbed, n + 1, Complex(x, 0), Complex(y, 0)).real();
    res.proof_variant = (kn + middle - kn1_hat * conn.w.evaluate(y)).norm();
  } else {
    res.proof_variant = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

UnimodularRow singular_unimodular_transform(const BiorthogonalSystem& scalar_sys,
                                            const Eigen::MatrixXd& a, int k) {
  if (scalar_sys.p != 1)
    throw Error("BlockShape", "the unimodular transform starts from a scalar OPS");
  if (scalar_sys.n_max < k + 2)
    throw DegreeWindow("need scalar polynomials up to degree k+2");
  const int q = static_cast<int>(a.rows());
  const Eigen::MatrixXd iq = Eigen::MatrixXd::Identity(q, q);

  const double h_k = scalar_sys.h[k](0, 0);
  const double h_k1 = scalar_sys.h[k + 1](0, 0);
  const double j_sub = h_k1 / h_k;  // J_{k+1,k}
  // J_{k+1,k+1} from x p_{k+1} = p_{k+2} + J_{k+1,k+1} p_{k+1} + J_{k+1,k} p_k
  const double j_diag =
      scalar_sys.p1[k + 1].coeff(k)(0, 0) - scalar_sys.p1[k + 2].coeff(k + 1)(0, 0);

  UnimodularRow row;
  row.rho = (iq + j_sub * a.transpose() * a).partialPivLu().inverse();
  row.c_prev = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  row.c_prev.topLeftCorner(q, q) = -j_sub * j_diag * a * row.rho * a.transpose();
  row.c_prev.bottomLeftCorner(q, q) = -j_sub * row.rho * a.transpose();
  row.c_same = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  row.c_same.topLeftCorner(q, q) = iq;
  row.c_same.topRightCorner(q, q) = j_diag * a * row.rho;
  row.c_same.bottomRightCorner(q, q) = row.rho;
  row.c_next = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  row.c_next.topRightCorner(q, q) = a;
  row.h_hat_12 = j_diag * h_k1 * a * row.rho;
  row.h_hat_22 = h_k1 * row.rho;
  return row;
}

MatrixPolynomial unimodular_perturbed_polynomial(
    const BiorthogonalSystem& scalar_sys, const Eigen::MatrixXd& a, int k) {
  UnimodularRow row = singular_unimodular_transform(scalar_sys, a, k);
  const int q = static_cast<int>(a.rows());
  const int pp = 2 * q;

  auto embed = [&](const MatrixPolynomial& s, const Eigen::MatrixXd& c) {
    std::vector<Eigen::MatrixXd> coeffs;
    for (int d = 0; d <= s.degree(); ++d)
      coeffs.push_back(s.coeff(d)(0, 0) * c);
    return MatrixPolynomial(std::move(coeffs));
  };
  MatrixPolynomial sum = embed(scalar_sys.p1[k], row.c_prev) +
                         embed(scalar_sys.p1[k + 1], row.c_same) +
                         embed(scalar_sys.p1[k + 2], row.c_next);
  // W_cal^{-1}(x) = [[I, -A x], [0, I]] is itself a polynomial
  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(pp, pp);
  w1.topRightCorner(q, q) = -a;
  MatrixPolynomial w_inv({Eigen::MatrixXd::Identity(pp, pp), w1});
  return sum * w_inv;
}

}  // namespace mop
