#pragma once

#include "hs/norms.hpp"

namespace hs {

// Truncated exponential series e^{ia} = sum_{k<=K} (ia)^k / k!, with enough
// metadata to bound the discarded tail.  The weighted tail bounds below are
// meaningful for ideal-type a, whose powers stay within a known level window.
struct ExpResult {
  Element<Cx> value;
  int K = 0;          // truncation order
  double rho = 0.0;   // certified upper bound for the operator norm of a
  int window = 1;     // level window of a; a^k lives within k*window levels
};

// Tail of the exponential series beyond order K measured in the (M,N)
// seminorm: each power a^k/k! has operator norm at most rho^k/k!, occupies
// levels below k*window + 1 (so the column weights contribute at most
// (k*window+1)^N), and each grading commutator multiplies the norm by at
// most 2*k*window.
double exp_tail_mn(double rho, int window, int K, int M, int N);

// Same for the commutator with the j-th power of (1 + level counter),
// measured at weight N: bounded by 2 rho^k/k! (k*window+1)^{N+j} per order.
double exp_tail_partialj(double rho, int window, int K, int j, int N);

// Truncation order K with plain-norm tail below tol; series evaluated by
// Horner so only K products are formed.
ExpResult exp_i(const Element<Cx>& a, double tol, const NormOptions& opt = {});

// Neumann series approximation of (I + c)^{-1} - I for ideal-type c with
// ‖c‖ < 1; defect = (I + approx)(I + c) - I, with ‖defect‖ <= rho^{K+1}/(1-rho).
struct NeumannResult {
  Element<Cx> correction;  // approximates (I+c)^{-1} - I, ideal-type
  Element<Cx> defect;
  int K = 0;
  double rho = 0.0;
};

NeumannResult neumann_inverse_defect(const Element<Cx>& c, double tol,
                                     const NormOptions& opt = {});

}  // namespace hs
