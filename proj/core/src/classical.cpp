#include "mop/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "mop/biorth.hpp"

namespace mop::classical {

namespace {

double binom(double a, int k) {
  if (k < 0) return 0.0;
  return std::exp(std::lgamma(a + 1.0) - std::lgamma(a - k + 1.0) -
                  std::lgamma(k + 1.0));
}

std::vector<double> polymul(const std::vector<double>& a,
                            const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// p_{next} = (x - d) p - s q from a monic three-term recurrence
std::vector<double> recur_step(const std::vector<double>& p,
                               const std::vector<double>& q, double d, double s) {
  std::vector<double> next(p.size() + 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    next[i + 1] += p[i];
    next[i] -= d * p[i];
  }
  for (size_t i = 0; i < q.size(); ++i) next[i] -= s * q[i];
  return next;
}

std::vector<double> monic_from_recurrence(int n, const std::vector<double>& diag,
                                          const std::vector<double>& sub) {
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{-diag[0], 1.0};
  for (int k = 1; k < n; ++k) {
    auto next = recur_step(cur, prev, diag[k], sub[k]);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

double polyval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> polyder(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = k * c[k];
  return d;
}

std::vector<double> chebyshev1_monic(int n) {
  auto rec = chebyshev1_recurrence(n);
  return monic_from_recurrence(n, rec.diag, rec.sub);
}

std::vector<double> chebyshev_u(int n) {
  if (n < 0) return {0.0};
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    // U_{k+1} = 2x U_k - U_{k-1}
    std::vector<double> next(cur.size() + 1, 0.0);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double chebyshev1_norm(int n) {
  if (n == 0) return M_PI;
  return M_PI / std::pow(2.0, 2 * n - 1);
}

std::vector<double> jacobi_alt(int n, double alpha, double beta) {
  // orthogonal against x^alpha (1-x)^beta:
  // p_n = S_n^{-1} sum_k C(n+beta, n-k) C(n+alpha, k) x^{n-k} (x-1)^k
  const double s = binom(2.0 * n + alpha + beta, n);
  std::vector<double> c(n + 1, 0.0);
  std::vector<double> xm1{-1.0, 1.0};
  std::vector<double> pw{1.0};
  for (int k = 0; k <= n; ++k) {
    const double f = binom(n + beta, n - k) * binom(n + alpha, k) / s;
    // pw = (x-1)^k, shifted by x^{n-k}
    for (size_t i = 0; i < pw.size(); ++i) c[n - k + i] += f * pw[i];
    if (k < n) pw = polymul(pw, xm1);
  }
  return c;
}

double jacobi_alt_norm(int n, double alpha, double beta) {
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(n + alpha + 1.0) +
                  std::lgamma(n + beta + 1.0) + std::lgamma(n + alpha + beta + 1.0) -
                  std::lgamma(2.0 * n + alpha + beta + 1.0) -
                  std::lgamma(2.0 * n + alpha + beta + 2.0));
}

std::vector<double> hermite_monic(int n) {
  auto rec = hermite_recurrence(n);
  return monic_from_recurrence(n, rec.diag, rec.sub);
}

double hermite_norm(int n) {
  return std::sqrt(M_PI) * std::exp(std::lgamma(n + 1.0)) / std::pow(2.0, n);
}

std::vector<double> laguerre_monic(int n, double alpha) {
  auto rec = laguerre_recurrence(n, alpha);
  return monic_from_recurrence(n, rec.diag, rec.sub);
}

double laguerre_norm(int n, double alpha) {
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(n + 1.0 + alpha));
}

ScalarRecurrence hermite_recurrence(int n_max) {
  ScalarRecurrence rec;
  for (int k = 0; k <= n_max; ++k) {
    rec.diag.push_back(0.0);
    rec.sub.push_back(k / 2.0);
    rec.h.push_back(hermite_norm(k));
  }
  return rec;
}

ScalarRecurrence laguerre_recurrence(int n_max, double alpha) {
  ScalarRecurrence rec;
  for (int k = 0; k <= n_max; ++k) {
    rec.diag.push_back(2.0 * k + 1.0 + alpha);
    rec.sub.push_back(k * (k + alpha));
    rec.h.push_back(laguerre_norm(k, alpha));
  }
  return rec;
}

ScalarRecurrence chebyshev1_recurrence(int n_max) {
  ScalarRecurrence rec;
  for (int k = 0; k <= n_max; ++k) {
    rec.diag.push_back(0.0);
    rec.sub.push_back(k == 0 ? 0.0 : (k == 1 ? 0.5 : 0.25));
    rec.h.push_back(chebyshev1_norm(k));
  }
  return rec;
}

}  // namespace mop::classical

namespace mop {

BiorthogonalSystem scalar_system(const classical::ScalarRecurrence& rec) {
  const int n_max = static_cast<int>(rec.diag.size()) - 1;
  BiorthogonalSystem sys;
  sys.p = 1;
  sys.n_max = n_max;
  std::vector<double> prev{1.0}, cur{1.0};
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Eigen::MatrixXd> coeffs;
    for (double c : cur) coeffs.push_back(Eigen::MatrixXd::Constant(1, 1, c));
    sys.p1.emplace_back(coeffs);
    sys.p2.emplace_back(std::move(coeffs));
    sys.h.push_back(Eigen::MatrixXd::Constant(1, 1, rec.h[n]));
    if (n < n_max) {
      // p_{n+1} = (x - diag_n) p_n - sub_n p_{n-1}
      std::vector<double> next(cur.size() + 1, 0.0);
      for (size_t i = 0; i < cur.size(); ++i) {
        next[i + 1] += cur[i];
        next[i] -= rec.diag[n] * cur[i];
      }
      if (n > 0)
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= rec.sub[n] * prev[i];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  return sys;
}

}  // namespace mop

namespace mop::classical {

ScalarRecurrence jacobi_alt_recurrence(int n_max, double alpha, double beta) {
  // standard monic Jacobi (weight (1-z)^a (1+z)^b, a = beta, b = alpha)
  // mapped from [-1,1] to [0,1].
  const double a = beta, b = alpha;
  ScalarRecurrence rec;
  for (int k = 0; k <= n_max; ++k) {
    double ak;
    if (k == 0)
      ak = (b - a) / (a + b + 2.0);
    else
      ak = (b * b - a * a) / ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0));
    rec.diag.push_back((ak + 1.0) / 2.0);
    if (k == 0) {
      rec.sub.push_back(0.0);
    } else {
      const double d = 2.0 * k + a + b;
      const double bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                        (d * d * (d + 1.0) * (d - 1.0));
      rec.sub.push_back(bk / 4.0);
    }
    rec.h.push_back(jacobi_alt_norm(k, alpha, beta));
  }
  return rec;
}

}  // namespace mop::classical
