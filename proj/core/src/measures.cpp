#include "mop/measures.hpp"

#include <cmath>

namespace mop {

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::lebesgue: return "lebesgue";
    case WeightFamily::jacobi_alt: return "jacobi_alt";
    case WeightFamily::chebyshev1: return "chebyshev1";
    case WeightFamily::hermite: return "hermite";
    case WeightFamily::laguerre: return "laguerre";
  }
  return "?";
}

WeightFamily family_from_name(const std::string& name) {
  if (name == "lebesgue") return WeightFamily::lebesgue;
  if (name == "jacobi_alt") return WeightFamily::jacobi_alt;
  if (name == "chebyshev1") return WeightFamily::chebyshev1;
  if (name == "hermite") return WeightFamily::hermite;
  if (name == "laguerre") return WeightFamily::laguerre;
  throw Error("UnknownWeight", "unknown base weight '" + name + "'");
}

double BaseWeight::weight(double x) const {
  switch (family) {
    case WeightFamily::lebesgue: return 1.0;
    case WeightFamily::jacobi_alt:
      return std::pow(x, alpha) * std::pow(1.0 - x, beta);
    case WeightFamily::chebyshev1: return 1.0 / std::sqrt(1.0 - x * x);
    case WeightFamily::hermite: return std::exp(-x * x);
    case WeightFamily::laguerre: return std::pow(x, alpha) * std::exp(-x);
  }
  return 0.0;
}

bool BaseWeight::bounded_support() const {
  return family == WeightFamily::lebesgue || family == WeightFamily::jacobi_alt ||
         family == WeightFamily::chebyshev1;
}

QuadratureRule BaseWeight::rule(int n) const {
  switch (family) {
    case WeightFamily::lebesgue: return gauss_legendre01(n);
    case WeightFamily::jacobi_alt: return gauss_jacobi01(n, alpha, beta);
    case WeightFamily::chebyshev1: return gauss_chebyshev1(n);
    case WeightFamily::hermite: return gauss_hermite(n);
    case WeightFamily::laguerre: return gauss_laguerre(n, alpha);
  }
  throw Error("UnknownWeight", "bad family");
}

Eigen::MatrixXd MatrixMeasure::factor_value(double x) const {
  if (factor) return factor->evaluate(x);
  return Eigen::MatrixXd::Identity(p, p);
}

QuadratureRule quadrature_for(const MatrixMeasure& measure, int max_degree) {
  const int needed = max_degree + measure.factor_degree();
  int order = measure.quad_order;
  if (order == 0) order = needed / 2 + 8;
  if (2 * order - 1 < needed)
    throw UnderResolvedQuadrature(
        "rule with " + std::to_string(order) +
        " nodes cannot integrate degree " + std::to_string(needed));
  return measure.base.rule(order);
}

namespace {

// all classical bases integrate plain powers in closed form
double closed_scalar_moment(const BaseWeight& base, int k) {
  switch (base.family) {
    case WeightFamily::lebesgue:
      return 1.0 / (k + 1);
    case WeightFamily::chebyshev1: {
      if (k % 2 == 1) return 0.0;
      // int x^{2j} / sqrt(1-x^2) = pi * C(2j,j) / 4^j
      const int j = k / 2;
      return M_PI * std::exp(std::lgamma(2.0 * j + 1.0) - 2.0 * std::lgamma(j + 1.0)) /
             std::pow(4.0, j);
    }
    case WeightFamily::jacobi_alt:  // Beta(k + alpha + 1, beta + 1)
      return std::exp(std::lgamma(k + base.alpha + 1.0) +
                      std::lgamma(base.beta + 1.0) -
                      std::lgamma(k + base.alpha + base.beta + 2.0));
    case WeightFamily::hermite:
      if (k % 2 == 1) return 0.0;
      return std::exp(std::lgamma((k + 1.0) / 2.0));
    case WeightFamily::laguerre:
      return std::exp(std::lgamma(k + base.alpha + 1.0));
  }
  throw Error("Internal", "no closed moment for this base");
}

}  // namespace

long double scalar_moment_xp(const BaseWeight& base, int k) {
  switch (base.family) {
    case WeightFamily::lebesgue:
      return 1.0L / (k + 1);
    case WeightFamily::chebyshev1: {
      if (k % 2 == 1) return 0.0L;
      const int j = k / 2;
      return static_cast<long double>(M_PI) *
             expl(lgammal(2.0L * j + 1.0L) - 2.0L * lgammal(j + 1.0L)) /
             powl(4.0L, j);
    }
    case WeightFamily::jacobi_alt:
      return expl(lgammal(k + static_cast<long double>(base.alpha) + 1.0L) +
                  lgammal(static_cast<long double>(base.beta) + 1.0L) -
                  lgammal(k + static_cast<long double>(base.alpha) +
                          static_cast<long double>(base.beta) + 2.0L));
    case WeightFamily::hermite:
      if (k % 2 == 1) return 0.0L;
      return expl(lgammal((k + 1.0L) / 2.0L));
    case WeightFamily::laguerre:
      return expl(lgammal(k + static_cast<long double>(base.alpha) + 1.0L));
  }
  throw Error("Internal", "no closed moment for this base");
}

std::vector<Eigen::MatrixXd> moments(const MatrixMeasure& measure, int count) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(count);
  const int p = measure.p;
  // a caller-pinned rule order must still cover the requested degrees
  if (measure.quad_order > 0 &&
      2 * measure.quad_order - 1 < count - 1 + measure.factor_degree())
    throw UnderResolvedQuadrature(
        "rule with " + std::to_string(measure.quad_order) +
        " nodes cannot integrate degree " +
        std::to_string(count - 1 + measure.factor_degree()));
  // m_k = sum_j F_j * int x^{k+j} w(x) dx
  const int fdeg = measure.factor_degree();
  for (int k = 0; k < count; ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
    for (int j = 0; j <= fdeg; ++j) {
      const Eigen::MatrixXd fj = measure.factor
                                     ? measure.factor->coeff(j)
                                     : Eigen::MatrixXd::Identity(p, p);
      m += fj * closed_scalar_moment(measure.base, k + j);
    }
    out.push_back(std::move(m));
  }
  return out;
}

BlockMatrix moment_matrix(const MatrixMeasure& measure, int n_blocks) {
  auto m = moments(measure, 2 * n_blocks - 1);
  BlockMatrix out(measure.p, n_blocks, n_blocks);
  for (int k = 0; k < n_blocks; ++k)
    for (int l = 0; l < n_blocks; ++l) out.block(k, l) = m[k + l];
  return out;
}

BlockMatrix perturbed_moment_matrix(const MatrixMeasure& measure,
                                    const MatrixPolynomial& w, int n_blocks) {
  if (w.p() != measure.p) throw Error("BlockShape", "block sizes disagree");
  const int p = measure.p;
  const int count = 2 * n_blocks - 1;
  QuadratureRule rule = quadrature_for(measure, count - 1 + w.degree());
  std::vector<Eigen::MatrixXd> s(count, Eigen::MatrixXd::Zero(p, p));
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes(q);
    const Eigen::MatrixXd wf =
        rule.weights(q) * (w.evaluate(x) * measure.factor_value(x));
    double xk = 1.0;
    for (int k = 0; k < count; ++k) {
      s[k] += xk * wf;
      xk *= x;
    }
  }
  BlockMatrix out(p, n_blocks, n_blocks);
  for (int k = 0; k < n_blocks; ++k)
    for (int l = 0; l < n_blocks; ++l) out.block(k, l) = s[k + l];
  return out;
}

BlockMatrix weighted_moment_matrix(
    const MatrixMeasure& measure, int n_blocks,
    const std::function<double(double, int, int)>& entry_weight,
    int extra_order) {
  const int p = measure.p;
  const int count = 2 * n_blocks - 1;
  const int needed = count - 1 + measure.factor_degree();
  int order = measure.quad_order;
  if (order == 0) order = needed / 2 + 8 + extra_order;
  QuadratureRule rule = measure.base.rule(order);

  std::vector<Eigen::MatrixXd> s(count, Eigen::MatrixXd::Zero(p, p));
  Eigen::MatrixXd g(p, p);
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes(q);
    const Eigen::MatrixXd f = measure.factor_value(x);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) g(a, b) = f(a, b) * entry_weight(x, a, b);
    g *= rule.weights(q);
    double xk = 1.0;
    for (int k = 0; k < count; ++k) {
      s[k] += xk * g;
      xk *= x;
    }
  }
  BlockMatrix out(p, n_blocks, n_blocks);
  for (int k = 0; k < n_blocks; ++k)
    for (int l = 0; l < n_blocks; ++l) out.block(k, l) = s[k + l];
  return out;
}

}  // namespace mop
