#pragma once
// K-theoretic bookkeeping for the shift algebra: classes of projections in
// the compact ideal as locally constant integer functions on the unit
// residues, winding numbers of invertible circle functions, and the index
// pairing between the two.

#include <vector>

#include "hs/element.hpp"
#include "hs/norms.hpp"
#include "hs/trigpoly.hpp"

namespace hs {

// A locally constant integer function on the units, tabulated at residue
// depth e in unit_residues order.  Addition refines both sides to a common
// depth; classes of projections add under orthogonal direct sums.
struct K0Class {
  int s = 2;
  int e = 1;
  std::vector<long long> values;
};

K0Class refined_class(const K0Class& c, int e);
K0Class scaled_class(const K0Class& c, long long k);
K0Class operator+(const K0Class& a, const K0Class& b);
bool operator==(const K0Class& a, const K0Class& b);
inline bool operator!=(const K0Class& a, const K0Class& b) { return !(a == b); }

// Class of a projection with vanishing boundary values: the rank of its
// finite fiber block at each unit residue.  depth 0 means the natural depth
// of the element; larger depths tabulate the same function more finely.
// Rejects inputs whose projection defects exceed tol in certified norm.
K0Class k0_class(const Element<Cx>& p, double tol = 1e-9, int depth = 0, const NormOptions& opt = {});

// Winding number of a nonvanishing trig polynomial around the origin,
// certified by a Lipschitz-refined sample of its values.
long long winding_number(const TrigPoly<Cx>& phi, double tol = 1e-9);

// Boundary map of the index pairing: an invertible circle function of
// winding w pairs to -w times the class of the range defect of the shift.
K0Class index_pairing(int s, const TrigPoly<Cx>& phi, double tol = 1e-9);

// The range defect I - VV*, the generating projection of the ideal's K0.
Element<Cx> range_defect(int s);

}  // namespace hs
