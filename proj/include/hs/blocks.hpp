#pragma once

#include <Eigen/Dense>

#include "hs/element.hpp"

namespace hs {

// Concrete matrix picture of a float element.  The representation space
// splits over unit residues of the fiber; fixing fiber depth e, coefficients
// are constant on residue classes mod s^e, so one m_cut x m_cut truncated
// matrix per unit residue class captures the compression to levels < m_cut.
struct BlockMatrixRep {
  int s = 2;
  int e = 1;
  int m_cut = 0;
  std::vector<long long> residues;       // unit residues mod s^e, ascending
  std::vector<Eigen::MatrixXcd> blocks;  // one per residue
};

// Levels beyond which every coefficient of an ideal-type element vanishes,
// in both row and column index of the matrix picture.  Compressions at or
// beyond this window are exact for ideal-type elements.
int exact_window(const Element<Cx>& a);

// Fiber depth large enough for every coefficient of a.
int fiber_depth(const Element<Cx>& a);

BlockMatrixRep to_blocks(const Element<Cx>& a, int e, int m_cut);

// Largest singular value across blocks, optionally with column m scaled by
// (1+m)^N (the matrix picture of right multiplication by the N-th power of
// one plus the level counter).
double blocks_sigma_max(const BlockMatrixRep& rep, int N);

// As above but each block gets gamma added on its diagonal first; returns
// max over blocks of max(sigma_max(gamma I + B), |gamma|), the norm of
// gamma + ideal when the blocks carry the whole ideal part.
double blocks_sigma_max_shifted(const BlockMatrixRep& rep, const Cx& gamma);

}  // namespace hs
