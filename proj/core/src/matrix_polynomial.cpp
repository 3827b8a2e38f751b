#include "mop/matrix_polynomial.hpp"

#include <Eigen/QR>

namespace mop {

namespace {

bool block_is_zero(const Eigen::MatrixXd& a, double atol) {
  return a.cwiseAbs().maxCoeff() <= atol;
}

}  // namespace

MatrixPolynomial::MatrixPolynomial(std::vector<Eigen::MatrixXd> coeffs,
                                   double zero_tol)
    : p_(0), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error("EmptyPolynomial", "no coefficients given");
  p_ = static_cast<int>(coeffs_.front().rows());
  for (const auto& c : coeffs_)
    if (c.rows() != p_ || c.cols() != p_)
      throw Error("BlockShape", "coefficient blocks must all be p x p");
  while (coeffs_.size() > 1 && block_is_zero(coeffs_.back(), zero_tol))
    coeffs_.pop_back();
}

MatrixPolynomial MatrixPolynomial::identity(int p) {
  return MatrixPolynomial({Eigen::MatrixXd::Identity(p, p)});
}

MatrixPolynomial MatrixPolynomial::monomial(int p, int degree, double c) {
  std::vector<Eigen::MatrixXd> coeffs(degree + 1, Eigen::MatrixXd::Zero(p, p));
  coeffs.back() = c * Eigen::MatrixXd::Identity(p, p);
  return MatrixPolynomial(std::move(coeffs));
}

MatrixPolynomial MatrixPolynomial::linear(const Eigen::MatrixXd& a) {
  const int p = static_cast<int>(a.rows());
  return MatrixPolynomial({-a, Eigen::MatrixXd::Identity(p, p)});
}

MatrixPolynomial MatrixPolynomial::scalar(int p, const std::vector<double>& c) {
  std::vector<Eigen::MatrixXd> coeffs;
  coeffs.reserve(c.size());
  for (double v : c) coeffs.push_back(v * Eigen::MatrixXd::Identity(p, p));
  if (coeffs.empty()) coeffs.push_back(Eigen::MatrixXd::Zero(p, p));
  return MatrixPolynomial(std::move(coeffs));
}

bool MatrixPolynomial::is_monic() const {
  return coeffs_.back() == Eigen::MatrixXd::Identity(p_, p_);
}

bool MatrixPolynomial::is_zero(double atol) const {
  for (const auto& c : coeffs_)
    if (!block_is_zero(c, atol)) return false;
  return true;
}

Eigen::MatrixXd MatrixPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size()))
    return Eigen::MatrixXd::Zero(p_, p_);
  return coeffs_[k];
}

Eigen::MatrixXd MatrixPolynomial::evaluate(double x) const {
  Eigen::MatrixXd acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
  return acc;
}

Eigen::MatrixXcd MatrixPolynomial::evaluate(std::complex<double> x) const {
  Eigen::MatrixXcd acc = coeffs_.back().cast<std::complex<double>>();
  for (int k = degree() - 1; k >= 0; --k)
    acc = acc * x + coeffs_[k].cast<std::complex<double>>();
  return acc;
}

Eigen::MatrixXd MatrixPolynomial::evaluate_at_matrix(const Eigen::MatrixXd& a) const {
  if (a.rows() != p_ || a.cols() != p_)
    throw Error("BlockShape", "matrix argument must be p x p");
  Eigen::MatrixXd acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) acc = acc * a + coeffs_[k];
  return acc;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  if (degree() == 0) return MatrixPolynomial(p_);
  std::vector<Eigen::MatrixXd> c;
  c.reserve(coeffs_.size() - 1);
  for (int k = 1; k < static_cast<int>(coeffs_.size()); ++k)
    c.push_back(k * coeffs_[k]);
  return MatrixPolynomial(std::move(c));
}

double MatrixPolynomial::coefficient_norm() const {
  double n = 0.0;
  for (const auto& c : coeffs_) n = std::max(n, c.norm());
  return n;
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& other) {
  coeffs_.resize(std::max(coeffs_.size(), other.coeffs_.size()),
                 Eigen::MatrixXd::Zero(p_, p_));
  for (int k = 0; k < static_cast<int>(other.coeffs_.size()); ++k)
    coeffs_[k] += other.coeffs_[k];
  while (coeffs_.size() > 1 && block_is_zero(coeffs_.back(), 0.0))
    coeffs_.pop_back();
  return *this;
}

MatrixPolynomial& MatrixPolynomial::operator-=(const MatrixPolynomial& other) {
  coeffs_.resize(std::max(coeffs_.size(), other.coeffs_.size()),
                 Eigen::MatrixXd::Zero(p_, p_));
  for (int k = 0; k < static_cast<int>(other.coeffs_.size()); ++k)
    coeffs_[k] -= other.coeffs_[k];
  while (coeffs_.size() > 1 && block_is_zero(coeffs_.back(), 0.0))
    coeffs_.pop_back();
  return *this;
}

MatrixPolynomial& MatrixPolynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) {
  a += b;
  return a;
}

MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b) {
  a -= b;
  return a;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  const int p = a.p();
  std::vector<Eigen::MatrixXd> c(a.degree() + b.degree() + 1,
                                 Eigen::MatrixXd::Zero(p, p));
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
  return MatrixPolynomial(std::move(c));
}

MatrixPolynomial operator*(double s, MatrixPolynomial a) {
  a *= s;
  return a;
}

MatrixPolynomial operator*(const Eigen::MatrixXd& b, const MatrixPolynomial& a) {
  std::vector<Eigen::MatrixXd> c;
  c.reserve(a.degree() + 1);
  for (int k = 0; k <= a.degree(); ++k) c.push_back(b * a.coeff(k));
  return MatrixPolynomial(std::move(c));
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const Eigen::MatrixXd& b) {
  std::vector<Eigen::MatrixXd> c;
  c.reserve(a.degree() + 1);
  for (int k = 0; k <= a.degree(); ++k) c.push_back(a.coeff(k) * b);
  return MatrixPolynomial(std::move(c));
}

Eigen::MatrixXd companion_matrix(const MatrixPolynomial& w) {
  if (!w.is_monic())
    throw NotMonic("companion matrix requires a monic matrix polynomial");
  const int p = w.p();
  const int n = w.degree();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n * p, n * p);
  for (int k = 0; k + 1 < n; ++k)
    c.block(k * p, (k + 1) * p, p, p) = Eigen::MatrixXd::Identity(p, p);
  for (int k = 0; k < n; ++k)
    c.block((n - 1) * p, k * p, p, p) = -w.coeff(k);
  return c;
}

MatrixPolynomial divide_right(const MatrixPolynomial& r,
                              const MatrixPolynomial& w, double tol) {
  if (!w.is_monic()) throw NotMonic("right division requires a monic divisor");
  const int p = r.p();
  const int n = w.degree();
  const int k = r.degree() - n;
  if (k < 0)
    throw Error("DegreeMismatch", "dividend degree below the divisor degree");

  // X * T = R with T block Toeplitz, T_{i,j} = W_{j-i}; solved as T^T X^T = R^T.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero((k + 1) * p, (k + n + 1) * p);
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= n; ++j) t.block(i * p, (i + j) * p, p, p) = w.coeff(j);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero((k + n + 1) * p, p);
  for (int j = 0; j <= k + n; ++j)
    rhs.block(j * p, 0, p, p) = r.coeff(j).transpose();

  Eigen::MatrixXd xt = t.transpose().colPivHouseholderQr().solve(rhs);
  const double scale = std::max(1.0, r.coefficient_norm());
  const double resid = (t.transpose() * xt - rhs).norm() / scale;
  if (resid > tol)
    throw DivisionResidual(resid, "right division by W left residual " +
                                      std::to_string(resid));

  std::vector<Eigen::MatrixXd> q;
  q.reserve(k + 1);
  for (int i = 0; i <= k; ++i)
    q.push_back(xt.block(i * p, 0, p, p).transpose());
  return MatrixPolynomial(std::move(q));
}

}  // namespace mop
