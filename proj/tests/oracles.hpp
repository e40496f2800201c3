#pragma once
// Independent dense-matrix oracles for the test suite.  Everything here is
// deliberately written against the raw matrix picture (explicit shift and
// diagonal matrices, eigendecompositions) rather than reusing the library's
// block machinery, so agreement is evidence and not tautology.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hs/element.hpp"
#include "hs/sadic.hpp"

namespace oracle {

using hs::Cx;

// Truncated shift on levels < m: e_c -> e_{c+1}.
inline Eigen::MatrixXcd shift_matrix(int m) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(m, m);
  for (int c = 0; c + 1 < m; ++c) v(c + 1, c) = 1.0;
  return v;
}

inline Eigen::MatrixXcd level_matrix(int m) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
  for (int c = 0; c < m; ++c) p(c, c) = static_cast<double>(c);
  return p;
}

inline Eigen::MatrixXcd diag_matrix(const hs::DiagonalSymbol<Cx>& f, long long u, int e, int m) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
  for (int c = 0; c < m; ++c) d(c, c) = f.value_at(c, u, e);
  return d;
}

// One truncated matrix per unit residue mod s^e, assembled as a sum of
// explicit matrix products V^n D or D (V^H)^{-n} per normal-form term.
inline std::vector<Eigen::MatrixXcd> dense_blocks(const hs::Element<Cx>& a, int e, int m) {
  std::vector<Eigen::MatrixXcd> out;
  const Eigen::MatrixXcd v = shift_matrix(m);
  const Eigen::MatrixXcd vh = v.adjoint();
  for (long long u : hs::unit_residues(a.base(), e)) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
    for (const auto& [n, f] : a.terms()) {
      Eigen::MatrixXcd word = diag_matrix(f, u, e, m);
      for (int i = 0; i < n; ++i) word = v * word;
      for (int i = 0; i > n; --i) word = word * vh;
      acc += word;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

inline double max_entry_diff(const std::vector<Eigen::MatrixXcd>& a,
                             const std::vector<Eigen::MatrixXcd>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return worst;
}

// Weighted operator norm of the truncation via the top eigenvalue of W^H W.
inline double dense_norm(const hs::Element<Cx>& a, int e, int m, int N) {
  double best = 0.0;
  for (const auto& block : dense_blocks(a, e, m)) {
    Eigen::MatrixXcd w = block;
    for (int c = 0; c < m; ++c) w.col(c) *= std::pow(1.0 + c, N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.adjoint() * w);
    best = std::max(best, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
  }
  return best;
}

// exp(i H) per residue block for self-adjoint a, via eigendecomposition.
inline std::vector<Eigen::MatrixXcd> dense_exp_i(const hs::Element<Cx>& a, int e, int m) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& block : dense_blocks(a, e, m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    Eigen::VectorXcd phase(m);
    for (int c = 0; c < m; ++c) phase(c) = std::polar(1.0, es.eigenvalues()(c));
    out.push_back(es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint());
  }
  return out;
}

}  // namespace oracle
