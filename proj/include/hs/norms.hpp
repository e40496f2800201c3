#pragma once

#include "hs/blocks.hpp"
#include "hs/element.hpp"
#include "hs/trigpoly.hpp"

namespace hs {

// Closed real interval certifying lo <= true value <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_scale(const Interval& a, double c);  // c >= 0
Interval iv_mul(const Interval& a, const Interval& b);  // both nonnegative
Interval iv_max(const Interval& a, const Interval& b);

// Norm certificate.  Exact values come from finite singular-value problems
// and carry a small relative splay for floating-point honesty; intervals
// come from compression lower bounds and triangle-inequality upper bounds;
// infinite marks genuinely unbounded weighted norms (nonvanishing tails
// against growing weights).
struct NormValue {
  enum class Kind { Exact, Interval, Infinite };
  Kind kind = Kind::Exact;
  double value = 0.0;  // representative: exact value or interval midpoint
  double lower = 0.0;
  double upper = 0.0;

  Interval iv() const { return {lower, upper}; }
  bool finite() const { return kind != Kind::Infinite; }
};

NormValue make_exact(double v);
NormValue make_interval(double lo, double hi);
NormValue make_infinite(double lower_bound);

struct NormOptions {
  int m_cut = 64;  // truncation size for interval lower bounds
};

double binomial(int n, int k);

// Weighted operator norm ‖a (1 + level)^N‖.  Exact for ideal-type elements
// (finite weighted blocks) and for scalar + ideal at N = 0; otherwise an
// interval at N = 0 and infinite for N >= 1 with a compression lower bound.
NormValue n_norm(const Element<Cx>& a, int N, const NormOptions& opt = {});

// Sum over j <= M of binom(M,j) ‖delta_p^j(a)‖_N.
NormValue mn_norm(const Element<Cx>& a, int M, int N, const NormOptions& opt = {});

// Certified range of sup_theta |phi(theta)|.  The maximum is located on a
// dense grid sharpened by the stationary points of |phi|^2 (companion-matrix
// roots), then splayed; the coefficient l1 bound caps it from above.
Interval sup_interval(const TrigPoly<Cx>& phi);

// C^k norm: sum over j <= k of binom(k,j) sup |D^j phi| with D the
// mode-multiplying derivative.
Interval ck_norm(const TrigPoly<Cx>& phi, int k);

// C^k norm of e^{i phi} for real-valued phi, via the exact recursion
// g_0 = 1, g_{j+1} = D(g_j) + i g_j D(phi), so |D^j e^{i phi}| = |g_j|.
Interval ck_norm_exp_real(const TrigPoly<Cx>& phi, int k);

// Multi-mode symbol versions: sup over both the circle variable and the
// finitely many residue classes the modes depend on.
Interval sup_interval(const LambdaSymbol<Cx>& lam);
Interval ck_norm(const LambdaSymbol<Cx>& lam, int k);

// Combined seminorm S·‖q(a)‖_{C^{M+N+2}} + ‖a − T(q(a))‖_{M,N}; requires
// constant coefficient tails.
NormValue hs_norm(const Element<Cx>& a, int M, int N, double S = 4.0,
                  const NormOptions& opt = {});

}  // namespace hs
