#include "mop/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace mop {

namespace {

using Complex = std::complex<double>;

// Single-linkage clustering of companion eigenvalues with threshold
// cluster_tol * (1 + spectral radius).
std::vector<std::vector<int>> cluster_points(const Eigen::VectorXcd& vals,
                                             double cluster_tol) {
  const int n = static_cast<int>(vals.size());
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(vals(i)));
  const double thresh = cluster_tol * (1.0 + radius);

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(vals(i) - vals(j)) <= thresh) parent[find(i)] = find(j);

  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_of[r]].push_back(i);
  }
  return groups;
}

// Orthonormal basis of the span of the columns of a, keeping directions with
// singular value above rank_tol * largest.
Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& a, double rank_tol) {
  if (a.cols() == 0) return Eigen::MatrixXcd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Eigen::MatrixXcd(a.rows(), 0);
  int r = 0;
  while (r < sv.size() && sv(r) > rank_tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

// Kernel basis of a (columns), singular values below rank_tol * largest
// counted as zero. Kernel vectors come from the right singular vectors with
// smallest singular values.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& a, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * std::max(smax, 1e-300))
    ++rank;
  const int dim = static_cast<int>(a.cols()) - rank;
  return svd.matrixV().rightCols(dim);
}

// Lower triangular block Toeplitz T_m stacking W(x0), W'(x0), W''(x0)/2!, ...
Eigen::MatrixXcd chain_system(const std::vector<Eigen::MatrixXcd>& taylor, int m) {
  const int p = static_cast<int>(taylor[0].rows());
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m * p, m * p);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) t.block(i * p, j * p, p, p) = taylor[i - j];
  return t;
}

}  // namespace

SpectralData spectrum(const MatrixPolynomial& w, double cluster_tol) {
  const Eigen::MatrixXd c = companion_matrix(w);
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, /*computeEigenvectors=*/false);
  const Eigen::VectorXcd vals = es.eigenvalues();

  SpectralData spec;
  spec.p = w.p();
  spec.degree = w.degree();

  auto groups = cluster_points(vals, cluster_tol);
  for (const auto& g : groups) {
    Complex mean = 0.0;
    for (int idx : g) mean += vals(idx);
    mean /= static_cast<double>(g.size());
    Eigenvalue ev;
    ev.value = mean;
    ev.alpha = static_cast<int>(g.size());
    spec.eigenvalues.push_back(ev);
  }
  // A single cluster holding the whole spectrum: the mean is the companion
  // trace over Np, which is exact where individual eigenvalues scatter.
  if (spec.eigenvalues.size() == 1)
    spec.eigenvalues[0].value = c.trace() / static_cast<double>(c.rows());

  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) {
              if (a.value.real() != b.value.real())
                return a.value.real() < b.value.real();
              return a.value.imag() < b.value.imag();
            });
  return spec;
}

SpectralData jordan_chains(const MatrixPolynomial& w, SpectralData spec,
                           double rank_tol) {
  const int p = w.p();

  for (auto& ev : spec.eigenvalues) {
    const Complex x0 = ev.value;
    const int alpha = ev.alpha;

    // Taylor blocks W^{(r)}(x0)/r!.
    std::vector<Eigen::MatrixXcd> taylor;
    MatrixPolynomial der = w;
    double rfact = 1.0;
    for (int r = 0; r <= alpha; ++r) {
      taylor.push_back(der.evaluate(x0) / rfact);
      der = der.derivative();
      rfact *= (r + 1);
    }

    // Kernels of the nested Toeplitz systems and the eigenvector subspaces
    // E_m reachable by chains of length >= m.
    std::vector<Eigen::MatrixXcd> kernels(alpha + 1);
    std::vector<Eigen::MatrixXcd> reach(alpha + 1);
    for (int m = 1; m <= alpha; ++m) {
      kernels[m] = kernel_basis(chain_system(taylor, m), rank_tol);
      reach[m] = column_space(kernels[m].topRows(p), rank_tol);
    }
    ev.geometric = static_cast<int>(reach[1].cols());
    if (ev.geometric == 0)
      throw MultiplicityMismatch("no eigenvector found at eigenvalue with rank_tol " +
                                 std::to_string(rank_tol));

    ev.chains.clear();
    Eigen::MatrixXcd chosen(p, 0);  // orthonormalized picked eigenvectors
    int remaining = alpha;
    while (remaining > 0) {
      // longest chain whose eigenvector leaves the span of the chosen ones
      int m_star = -1;
      Eigen::VectorXcd v0;
      for (int m = std::min(alpha, remaining); m >= 1 && m_star < 0; --m) {
        if (reach[m].cols() == 0) continue;
        Eigen::MatrixXcd resid = reach[m];
        if (chosen.cols() > 0)
          resid -= chosen * (chosen.adjoint() * reach[m]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
            resid, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues().size() && svd.singularValues()(0) > rank_tol) {
          // direction in E_m with the largest component off the chosen span
          Eigen::VectorXcd c = svd.matrixV().col(0);
          v0 = reach[m] * c;
          v0.normalize();
          m_star = m;
        }
      }
      if (m_star < 0)
        throw MultiplicityMismatch(
            "chain lengths found do not fill the algebraic multiplicity; "
            "cluster_tol/rank_tol combination is inconsistent");

      // extend v0 to a chain: least-squares combination of kernel vectors of
      // T_{m*} whose first block matches v0
      const Eigen::MatrixXcd& k = kernels[m_star];
      Eigen::MatrixXcd top = k.topRows(p);
      Eigen::VectorXcd coef =
          top.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v0);
      Eigen::VectorXcd flat = k * coef;

      JordanChain chain;
      for (int r = 0; r < m_star; ++r)
        chain.vectors.push_back(flat.segment(r * p, p));
      // renormalize so the eigenvector has unit norm
      const double v0n = chain.vectors[0].norm();
      if (v0n > 0)
        for (auto& v : chain.vectors) v /= v0n;
      ev.chains.push_back(std::move(chain));

      Eigen::MatrixXcd grown(p, chosen.cols() + 1);
      grown << chosen, ev.chains.back().vectors[0];
      chosen = column_space(grown, rank_tol);
      remaining -= m_star;
    }

    if (static_cast<int>(ev.chains.size()) != ev.geometric)
      throw MultiplicityMismatch(
          "number of chains differs from dim Ker W(x_i): " +
          std::to_string(ev.chains.size()) + " vs " +
          std::to_string(ev.geometric));
  }
  return spec;
}

double chain_residual(const MatrixPolynomial& w, const SpectralData& spec) {
  double worst = 0.0;
  for (const auto& ev : spec.eigenvalues) {
    std::vector<Eigen::MatrixXcd> taylor;
    MatrixPolynomial der = w;
    double rfact = 1.0;
    int max_len = 0;
    for (const auto& c : ev.chains) max_len = std::max(max_len, c.length());
    for (int r = 0; r < max_len; ++r) {
      taylor.push_back(der.evaluate(ev.value) / rfact);
      der = der.derivative();
      rfact *= (r + 1);
    }
    for (const auto& chain : ev.chains)
      for (int j = 0; j < chain.length(); ++j) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(spec.p);
        for (int r = 0; r <= j; ++r) acc += taylor[r] * chain.vectors[j - r];
        worst = std::max(worst, acc.norm());
      }
  }
  return worst;
}

Eigen::VectorXcd root_polynomial_value(const JordanChain& chain,
                                       std::complex<double> x0,
                                       std::complex<double> x) {
  Eigen::VectorXcd acc = chain.vectors.back();
  for (int r = chain.length() - 2; r >= 0; --r)
    acc = acc * (x - x0) + chain.vectors[r];
  return acc;
}

}  // namespace mop
