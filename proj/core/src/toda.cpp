#include "mop/toda.hpp"

#include <cmath>

namespace mop {

TodaTimes TodaTimes::flow1(int p, double s) {
  TodaTimes t;
  t.p = p;
  t.t1 = {Eigen::VectorXd::Zero(p), Eigen::VectorXd::Constant(p, s)};
  return t;
}

bool TodaTimes::is_zero() const {
  for (const auto& v : t1)
    if (v.cwiseAbs().maxCoeff() != 0.0) return false;
  for (const auto& v : t2)
    if (v.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

bool TodaTimes::is_scalar() const {
  auto scalar = [](const Eigen::VectorXd& v) {
    return v.size() == 0 || (v.array() - v(0)).abs().maxCoeff() == 0.0;
  };
  for (const auto& v : t1)
    if (!scalar(v)) return false;
  for (const auto& v : t2)
    if (!scalar(v)) return false;
  return true;
}

std::vector<double> TodaTimes::exponent(int side, int component) const {
  const auto& ts = side == 1 ? t1 : t2;
  std::vector<double> g;
  g.reserve(ts.size());
  for (const auto& v : ts) g.push_back(v(component));
  return g;
}

TodaTimes TodaTimes::shifted(int side, int j, int component, double delta) const {
  TodaTimes out = *this;
  auto& ts = side == 1 ? out.t1 : out.t2;
  while (static_cast<int>(ts.size()) <= j) ts.push_back(Eigen::VectorXd::Zero(p));
  ts[j](component) += delta;
  return out;
}

namespace {

double polyval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Sign check of the combined exponent polynomial against the support: the
// deformed integrand must stay integrable at unbounded boundaries.
void check_convergence(const MatrixMeasure& measure, const TodaTimes& times) {
  if (measure.base.bounded_support()) return;
  for (int a = 0; a < measure.p; ++a)
    for (int b = 0; b < measure.p; ++b) {
      auto g1 = times.exponent(1, a);
      auto g2 = times.exponent(2, b);
      std::vector<double> g(std::max(g1.size(), g2.size()), 0.0);
      for (size_t j = 0; j < g1.size(); ++j) g[j] += g1[j];
      for (size_t j = 0; j < g2.size(); ++j) g[j] -= g2[j];
      int top = -1;
      for (int j = static_cast<int>(g.size()) - 1; j >= 1; --j)
        if (g[j] != 0.0) {
          top = j;
          break;
        }
      if (top < 1) continue;
      if (measure.base.family == WeightFamily::hermite) {
        if (top >= 3)
          throw DivergentDeformation("degree >= 3 exponent beats exp(-x^2)");
        if (top == 2 && g[2] > 0.5)
          throw DivergentDeformation("x^2 coefficient above 1/2 on a Hermite base");
      } else {  // laguerre
        if (top >= 2 && g[top] > 0.0)
          throw DivergentDeformation("growing exponent on (0,inf)");
        if (top == 1 && g[1] > 0.5)
          throw DivergentDeformation("x coefficient above 1/2 on a Laguerre base");
      }
    }
}

}  // namespace

TodaState evolve_measure(const MatrixMeasure& measure, const TodaTimes& times,
                         int n_blocks, double tol) {
  if (times.p != measure.p)
    throw Error("BlockShape", "time matrices and measure block sizes disagree");
  check_convergence(measure, times);

  std::vector<std::vector<double>> g1, g2;
  for (int a = 0; a < measure.p; ++a) {
    g1.push_back(times.exponent(1, a));
    g2.push_back(times.exponent(2, a));
  }
  auto entry_weight = [&](double x, int a, int b) {
    return std::exp(polyval(g1[a], x) - polyval(g2[b], x));
  };
  TodaState state;
  state.times = times;
  state.m = weighted_moment_matrix(measure, n_blocks, entry_weight, 48);
  state.fact = gauss_borel_factorize(state.m, tol);
  return state;
}

TodaResidual toda_residual(const MatrixMeasure& measure, const TodaTimes& times,
                           int k, double h, int n_blocks) {
  if (k < 1) throw Error("BadParameter", "toda residual needs k >= 1");
  const int p = measure.p;
  if (n_blocks < 0) n_blocks = k + 2;

  auto h_blocks = [&](const TodaTimes& t) {
    return evolve_measure(measure, t, n_blocks).fact.h_blocks();
  };

  TodaResidual out;

  // multicomponent equations, one per component pair (a,b)
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      auto at = [&](double d1, double d2) {
        return h_blocks(times.shifted(1, 1, a, d1).shifted(2, 1, b, d2));
      };
      auto g_of = [&](double d2) {
        auto hp = at(h, d2);
        auto hm = at(-h, d2);
        auto h0 = at(0.0, d2);
        return Eigen::MatrixXd(((hp[k] - hm[k]) / (2.0 * h)) *
                               h0[k].partialPivLu().inverse());
      };
      const Eigen::MatrixXd d21 = (g_of(h) - g_of(-h)) / (2.0 * h);
      auto base = at(0.0, 0.0);
      Eigen::MatrixXd eaa = Eigen::MatrixXd::Zero(p, p);
      Eigen::MatrixXd ebb = Eigen::MatrixXd::Zero(p, p);
      eaa(a, a) = 1.0;
      ebb(b, b) = 1.0;
      const Eigen::MatrixXd res =
          d21 + eaa * base[k + 1] * ebb * base[k].partialPivLu().inverse() -
          base[k] * ebb * base[k - 1].partialPivLu().inverse() * eaa;
      out.multicomponent = std::max(out.multicomponent, res.norm());
    }

  // non-Abelian reduction through the total flows
  {
    auto shift_all = [&](const TodaTimes& t, int side, double d) {
      TodaTimes s = t;
      for (int a = 0; a < p; ++a) s = s.shifted(side, 1, a, d);
      return s;
    };
    auto at = [&](double d1, double d2) {
      return h_blocks(shift_all(shift_all(times, 1, d1), 2, d2));
    };
    auto g_of = [&](double d2) {
      auto hp = at(h, d2);
      auto hm = at(-h, d2);
      auto h0 = at(0.0, d2);
      return Eigen::MatrixXd(((hp[k] - hm[k]) / (2.0 * h)) *
                             h0[k].partialPivLu().inverse());
    };
    const Eigen::MatrixXd d21 = (g_of(h) - g_of(-h)) / (2.0 * h);
    auto base = at(0.0, 0.0);
    const Eigen::MatrixXd res =
        d21 + base[k + 1] * base[k].partialPivLu().inverse() -
        base[k] * base[k - 1].partialPivLu().inverse();
    out.non_abelian = res.norm();
  }
  return out;
}

std::pair<BlockMatrix, BlockMatrix> lax_matrices(const GaussBorelFactorization& fact) {
  const int p = fact.s1.p();
  const int n = fact.size();
  if (n < 2) throw DegreeWindow("Lax matrices need at least 2 blocks");
  const int w = n - 1;  // exact window

  BlockMatrix s1_inv = invert_unit_lower(fact.s1);
  BlockMatrix l1(p, w, w);
  for (int k = 0; k < w; ++k)
    for (int l = 0; l < w; ++l) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
      for (int i = std::max(0, l - 1); i <= k; ++i)
        acc += fact.s1.block(k, i) * s1_inv.block(i + 1, l);
      l1.block(k, l) = acc;
    }

  // S2~ = H S2^{-T} (upper, diagonal H_k), S2~^{-1} = S2^T H^{-1}
  BlockMatrix s2_inv = invert_unit_lower(fact.s2);
  BlockMatrix l2(p, w, w);
  for (int k = 0; k < w; ++k)
    for (int l = 0; l < w; ++l) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
      // sum_m (S2~)_{k,m} (S2~^{-1})_{m-1,l}, m = max(k,1)..l+1
      for (int m = std::max(k, 1); m <= l + 1; ++m) {
        const Eigen::MatrixXd left =
            fact.h.block(k, k) * s2_inv.block(m, k).transpose();
        const Eigen::MatrixXd right =
            fact.s2.block(l, m - 1).transpose() *
            fact.h.block(l, l).partialPivLu().inverse();
        acc += left * right;
      }
      l2.block(k, l) = acc;
    }
  return {std::move(l1), std::move(l2)};
}

std::pair<BlockMatrix, BlockMatrix> lax_matrices(const TodaState& state) {
  return lax_matrices(state.fact);
}

double lax_defect(const BlockMatrix& l1, const BlockMatrix& l2) {
  return (l1.data() - l2.data()).norm();
}

bool FlowReport::all_ok() const {
  for (const auto& p : points)
    if (!p.ok) return false;
  return !points.empty();
}

double FlowReport::max_residual() const {
  double m = 0.0;
  for (const auto& p : points) {
    m = std::max(m, p.relation_residual);
    m = std::max(m, p.diag_residual);
    m = std::max(m, p.band_residual);
    m = std::max(m, p.christoffel_residual);
  }
  return m;
}

FlowReport christoffel_flow_check(const MatrixMeasure& measure,
                                  const MatrixPolynomial& w,
                                  const std::vector<double>& t_grid, int k_max,
                                  double tol) {
  const int p = measure.p;
  const int n_deg = w.degree();
  SpectralData spec = jordan_chains(w, spectrum(w));

  FlowReport report;
  for (double t : t_grid) {
    FlowCheckPoint point;
    point.t = t;
    try {
      TodaTimes times = TodaTimes::flow1(p, t);
      const int n_blocks = k_max + n_deg + 1;
      TodaState state = evolve_measure(measure, times, n_blocks, tol);
      BiorthogonalSystem orig =
          build_biorthogonal(state.m, k_max + n_deg, tol);
      // M^(t) = W(Lambda) M(t) on the truncation
      BlockMatrix m_hat =
          apply_poly_shift(w, state.m).truncated(k_max + 1, k_max + 1);
      BiorthogonalSystem pert = build_biorthogonal(m_hat, k_max, tol);

      ConnectionData conn = connection_matrices(orig, pert, w);
      point.relation_residual = conn.relation_residual;
      point.diag_residual = conn.diag_residual;
      point.band_residual = conn.band_residual;

      for (int k = 0; k <= k_max && k + n_deg <= orig.n_max; ++k) {
        TransformedPolynomial tr = christoffel_transform(orig, w, spec, k);
        double err = (tr.h_hat - pert.h[k]).norm() /
                     std::max(1.0, pert.h[k].norm());
        for (int d = 0; d <= k; ++d) {
          err = std::max(err, (tr.p1_hat.coeff(d) - pert.p1[k].coeff(d)).norm());
          err = std::max(err, (tr.p2_hat.coeff(d) - pert.p2[k].coeff(d)).norm());
        }
        point.christoffel_residual = std::max(point.christoffel_residual, err);
      }
      point.ok = true;
    } catch (const Error& e) {
      point.ok = false;
      point.error = e.kind();
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

}  // namespace mop
