#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mop/matrix_polynomial.hpp"

namespace mop {

/// One Jordan chain v_0, ..., v_{kappa-1} at an eigenvalue; v_0 is the
/// eigenvector, and the chain vectors are the Taylor coefficients of the
/// adapted root polynomial v(x) = sum_r v_r (x - x_i)^r.
struct JordanChain {
  std::vector<Eigen::VectorXcd> vectors;
  int length() const { return static_cast<int>(vectors.size()); }
};

struct Eigenvalue {
  std::complex<double> value;
  int alpha = 0;      // algebraic multiplicity (cluster size)
  int geometric = 0;  // s_i = dim Ker W(x_i); 0 until chains are computed
  std::vector<JordanChain> chains;

  std::vector<int> kappas() const {
    std::vector<int> k;
    k.reserve(chains.size());
    for (const auto& c : chains) k.push_back(c.length());
    return k;
  }
};

/// Eigenvalues of a monic matrix polynomial with multiplicities, and (once
/// completed) a canonical set of Jordan chains per eigenvalue. Eigenvalues
/// are sorted ascending by real part, then imaginary part; chain order is
/// the greedy longest-first construction order. Jet assembly relies on this
/// ordering being fixed.
struct SpectralData {
  int p = 0;
  int degree = 0;
  std::vector<Eigenvalue> eigenvalues;

  int total_multiplicity() const {
    int t = 0;
    for (const auto& e : eigenvalues) t += e.alpha;
    return t;
  }
  bool has_chains() const {
    for (const auto& e : eigenvalues)
      if (e.chains.empty()) return false;
    return !eigenvalues.empty();
  }
};

/// Companion eigenvalues clustered into groups of pairwise distance at most
/// cluster_tol * (1 + spectral radius); each cluster is reported once with
/// alpha = cluster size. When all Np eigenvalues form one cluster the value
/// is taken from the companion trace, which is exact.
SpectralData spectrum(const MatrixPolynomial& w, double cluster_tol = 1e-6);

/// Completes a SpectralData with geometric multiplicities, partial
/// multiplicities and Jordan chains, built greedily longest-chain-first from
/// the kernels of the nested block Toeplitz systems stacking
/// W(x_i), W'(x_i), W''(x_i)/2!, ... Throws MultiplicityMismatch when the
/// chain lengths found do not add up to alpha_i.
SpectralData jordan_chains(const MatrixPolynomial& w, SpectralData spec,
                           double rank_tol = 1e-10);

/// Max over chains of the Jordan-chain defining residual
/// || sum_{r<=j} W^{(r)}(x_i) v_{j-r} / r! ||.
double chain_residual(const MatrixPolynomial& w, const SpectralData& spec);

/// Adapted root polynomial v(x) evaluated through its Taylor coefficients.
Eigen::VectorXcd root_polynomial_value(const JordanChain& chain,
                                       std::complex<double> x0,
                                       std::complex<double> x);

}  // namespace mop
