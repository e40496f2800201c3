#include "hs/blocks.hpp"

#include <Eigen/SVD>

namespace hs {

int exact_window(const Element<Cx>& a) {
  int w = 1;
  for (const auto& [n, f] : a.terms())
    w = std::max(w, f.mdepth() + std::abs(n));
  return w;
}

int fiber_depth(const Element<Cx>& a) {
  int e = 1;
  for (const auto& [n, f] : a.terms()) e = std::max(e, f.xdepth());
  return e;
}

BlockMatrixRep to_blocks(const Element<Cx>& a, int e, int m_cut) {
  if (e < fiber_depth(a))
    throw std::invalid_argument("to_blocks: fiber depth too small for element");
  BlockMatrixRep rep;
  rep.s = a.base();
  rep.e = e;
  rep.m_cut = m_cut;
  rep.residues = unit_residues(a.base(), e);
  rep.blocks.assign(rep.residues.size(), Eigen::MatrixXcd::Zero(m_cut, m_cut));
  for (std::size_t ui = 0; ui < rep.residues.size(); ++ui) {
    const long long u = rep.residues[ui];
    Eigen::MatrixXcd& B = rep.blocks[ui];
    for (const auto& [n, f] : a.terms()) {
      if (n >= 0) {
        // V^n M_F: column m feeds row m+n with weight F(m, u).
        for (int m = 0; m + n < m_cut; ++m) B(m + n, m) += f.value_at(m, u, e);
      } else {
        // M_F (V*)^{-n}: column m >= -n feeds row m+n with weight F(m+n, u).
        const int j = -n;
        for (int m = j; m < m_cut; ++m) B(m - j, m) += f.value_at(m - j, u, e);
      }
    }
  }
  return rep;
}

namespace {
Eigen::VectorXd column_weights(int m_cut, int N) {
  Eigen::VectorXd w(m_cut);
  for (int m = 0; m < m_cut; ++m) w(m) = std::pow(1.0 + m, N);
  return w;
}
}  // namespace

double blocks_sigma_max(const BlockMatrixRep& rep, int N) {
  double best = 0.0;
  Eigen::VectorXd w = column_weights(rep.m_cut, N);
  for (const auto& B : rep.blocks) {
    Eigen::MatrixXcd W = N == 0 ? B : Eigen::MatrixXcd(B * w.asDiagonal());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W);
    if (svd.singularValues().size() > 0)
      best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

double blocks_sigma_max_shifted(const BlockMatrixRep& rep, const Cx& gamma) {
  double best = std::abs(gamma);
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(rep.m_cut, rep.m_cut);
  for (const auto& B : rep.blocks) {
    Eigen::MatrixXcd W = B + gamma * eye;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W);
    if (svd.singularValues().size() > 0)
      best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

}  // namespace hs
