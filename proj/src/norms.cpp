#include "hs/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hs {

namespace {

constexpr double kRelSplay = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double splay_down(double v) { return v - kRelSplay * std::abs(v) - 1e-300; }
double splay_up(double v) { return v + kRelSplay * std::abs(v) + 1e-300; }

}  // namespace

Interval iv_add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval iv_scale(const Interval& a, double c) { return {a.lo * c, a.hi * c}; }

Interval iv_mul(const Interval& a, const Interval& b) {
  return {std::max(0.0, a.lo) * std::max(0.0, b.lo), a.hi * b.hi};
}

Interval iv_max(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

NormValue make_exact(double v) {
  return {NormValue::Kind::Exact, v, std::max(0.0, splay_down(v)), splay_up(v)};
}

NormValue make_interval(double lo, double hi) {
  lo = std::max(0.0, splay_down(lo));
  hi = splay_up(hi);
  if (lo > hi) lo = hi;
  return {NormValue::Kind::Interval, 0.5 * (lo + hi), lo, hi};
}

NormValue make_infinite(double lower_bound) {
  return {NormValue::Kind::Infinite, kInf, std::max(0.0, splay_down(lower_bound)), kInf};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

namespace {

// Weighted single-word norm: a normal-form word is a weighted shift, so its
// weighted operator norm is the sup of coefficient times column weight.
double single_term_norm(int n, const DiagonalSymbol<Cx>& f, int N) {
  const int off = n < 0 ? -n : 0;  // column index exceeds coefficient index by -n
  double best = 0.0;
  const auto res = unit_residues(f.base(), f.xdepth());
  for (int m = 0; m < f.mdepth(); ++m)
    for (long long u : res)
      best = std::max(best, std::pow(1.0 + m + off, N) * std::abs(f.value_at(m, u, f.xdepth())));
  return best;
}

struct TailShape {
  bool all_zero = true;            // ideal-type
  bool scalar_plus_ideal = false;  // only nonzero tail: constant, at term 0
  Cx gamma = 0.0;
};

TailShape tail_shape(const Element<Cx>& a) {
  TailShape sh;
  for (const auto& [n, f] : a.terms()) {
    if (f.zero_tail()) continue;
    sh.all_zero = false;
    if (n == 0 && f.tail_constant()) {
      sh.scalar_plus_ideal = true;
      sh.gamma = f.tail()[0];
    } else {
      sh.scalar_plus_ideal = false;
      return sh;
    }
  }
  if (sh.all_zero) sh.scalar_plus_ideal = false;
  return sh;
}

// Lower bound for ‖a‖ from the boundary values: the coefficient tails trace
// out circle functions per residue class, and the quotient map onto them is
// contractive.
double boundary_lower_bound(const Element<Cx>& a) {
  int e = 1;
  for (const auto& [n, f] : a.terms()) e = std::max(e, f.xdepth());
  double best = 0.0;
  for (long long u : unit_residues(a.base(), e)) {
    TrigPoly<Cx> phi;
    for (const auto& [n, f] : a.terms())
      phi.add(n, f.value_at(f.mdepth(), u, e));  // any index at or past the core
    best = std::max(best, sup_interval(phi).lo);
  }
  return best;
}

double triangle_upper_bound(const Element<Cx>& a) {
  double sum = 0.0;
  for (const auto& [n, f] : a.terms()) sum += sup_norm(f);
  return sum;
}

}  // namespace

NormValue n_norm(const Element<Cx>& a, int N, const NormOptions& opt) {
  if (N < 0) throw std::invalid_argument("n_norm: negative weight order");
  if (a.is_zero()) return make_exact(0.0);

  const TailShape sh = tail_shape(a);

  if (sh.all_zero) {
    if (a.terms().size() == 1) {
      const auto& [n, f] = *a.terms().begin();
      return make_exact(single_term_norm(n, f, N));
    }
    const int w = exact_window(a);
    BlockMatrixRep rep = to_blocks(a, fiber_depth(a), w);
    return make_exact(blocks_sigma_max(rep, N));
  }

  if (sh.scalar_plus_ideal && N == 0) {
    // a = gamma + ideal: beyond the coefficient window the operator is the
    // scalar gamma on each level line, so the norm is the max of the scalar
    // modulus and the finite shifted corner blocks.
    Element<Cx> b = a - scaled(Element<Cx>::identity(a.base()), sh.gamma);
    const int w = std::max(1, exact_window(b));
    BlockMatrixRep rep = to_blocks(b, fiber_depth(b), w);
    return make_exact(blocks_sigma_max_shifted(rep, sh.gamma));
  }

  // Nonvanishing tails meet unbounded column weights.
  if (N >= 1) {
    BlockMatrixRep rep = to_blocks(a, fiber_depth(a), opt.m_cut);
    return make_infinite(blocks_sigma_max(rep, N));
  }

  BlockMatrixRep rep = to_blocks(a, fiber_depth(a), opt.m_cut);
  double lb = std::max(blocks_sigma_max(rep, 0), boundary_lower_bound(a));
  double ub = triangle_upper_bound(a);
  return make_interval(lb, std::max(lb, ub));
}

NormValue mn_norm(const Element<Cx>& a, int M, int N, const NormOptions& opt) {
  if (M < 0) throw std::invalid_argument("mn_norm: negative order");
  bool any_infinite = false, any_interval = false;
  double value = 0.0, lower = 0.0, upper = 0.0;
  Element<Cx> d = a;
  for (int j = 0; j <= M; ++j) {
    if (j > 0) d = delta_p(d);
    NormValue nv = n_norm(d, N, opt);
    const double c = binomial(M, j);
    value += c * nv.value;
    lower += c * nv.lower;
    upper += c * nv.upper;
    if (nv.kind == NormValue::Kind::Infinite) any_infinite = true;
    if (nv.kind == NormValue::Kind::Interval) any_interval = true;
  }
  if (any_infinite) return make_infinite(lower);
  if (any_interval) return make_interval(lower, upper);
  NormValue out = make_exact(value);
  out.lower = std::min(out.lower, lower);
  out.upper = std::max(out.upper, upper);
  return out;
}

namespace {

// Angles where |phi|^2 is stationary: the mode-weighted autocorrelation
// r(z) = sum_k k q_k z^{k+deg}, q_k = sum_n phi_n conj(phi_{n-k}), vanishes
// exactly at the critical points of |phi(theta)|^2 on |z| = 1.  Its roots
// come from the companion matrix.
std::vector<double> critical_angles(const TrigPoly<Cx>& phi) {
  if (phi.coeffs().empty()) return {};
  // The autocorrelation lag n - m spans the mode range, not the degree.
  const int nmin = phi.coeffs().begin()->first;
  const int nmax = phi.coeffs().rbegin()->first;
  const int width = nmax - nmin;
  std::vector<Cx> coef(2 * width + 1, Cx(0.0, 0.0));
  for (const auto& [n, cn] : phi.coeffs())
    for (const auto& [m, cm] : phi.coeffs()) {
      const int k = n - m;
      coef[static_cast<size_t>(k + width)] += static_cast<double>(k) * cn * std::conj(cm);
    }
  double scale = 0.0;
  for (const auto& c : coef) scale = std::max(scale, std::abs(c));
  std::vector<double> angles;
  if (scale == 0.0) return angles;  // |phi| is constant
  int lo = 0, hi = static_cast<int>(coef.size()) - 1;
  while (lo < hi && std::abs(coef[lo]) <= 1e-14 * scale) ++lo;
  while (hi > lo && std::abs(coef[hi]) <= 1e-14 * scale) --hi;
  const int d = hi - lo;
  if (d < 1) return angles;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coef[lo + i] / coef[hi];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < d; ++i) {
    const Cx z = es.eigenvalues()(i);
    if (std::abs(std::abs(z) - 1.0) < 1e-4)
      angles.push_back(std::arg(z) / (2.0 * std::numbers::pi));
  }
  return angles;
}

}  // namespace

Interval sup_interval(const TrigPoly<Cx>& phi) {
  if (phi.is_zero()) return {0.0, 0.0};
  const int deg = phi.degree();
  double l1 = 0.0;
  for (const auto& [n, c] : phi.coeffs()) l1 += std::abs(c);

  // Grid floor plus the exact stationary points of the squared modulus: the
  // maximum is attained at a stationary point, and evaluation error there is
  // second order in the root-finding error.
  double best = 0.0;
  const int K = 64 * (deg + 1);
  for (int k = 0; k < K; ++k)
    best = std::max(best, std::abs(eval(phi, static_cast<double>(k) / K)));
  for (double theta : critical_angles(phi))
    best = std::max(best, std::abs(eval(phi, theta)));

  const double rel = 1e-9;
  double lo = std::max(0.0, best * (1.0 - rel));
  double hi = std::min(l1, best * (1.0 + rel) + 1e-300);
  hi = std::max(hi, lo);
  return {lo, hi};
}

Interval ck_norm(const TrigPoly<Cx>& phi, int k) {
  Interval total{0.0, 0.0};
  TrigPoly<Cx> d = phi;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) d = d.derivative();
    total = iv_add(total, iv_scale(sup_interval(d), binomial(k, j)));
  }
  return total;
}

Interval ck_norm_exp_real(const TrigPoly<Cx>& phi, int k) {
  if (!phi.is_real_valued())
    throw std::invalid_argument("ck_norm_exp_real: symbol must be real-valued");
  const TrigPoly<Cx> dphi = phi.derivative();
  TrigPoly<Cx> g = TrigPoly<Cx>::constant(1.0);
  Interval total{0.0, 0.0};
  for (int j = 0; j <= k; ++j) {
    if (j > 0) g = g.derivative() + g.scaled(Cx(0.0, 1.0)) * dphi;
    total = iv_add(total, iv_scale(sup_interval(g), binomial(k, j)));
  }
  return total;
}

namespace {

TrigPoly<Cx> residue_slice(const LambdaSymbol<Cx>& lam, long long u, int e) {
  TrigPoly<Cx> phi;
  for (const auto& [n, f] : lam.modes) phi.add(n, f.value_at(0, u, e));
  return phi;
}

int lambda_depth(const LambdaSymbol<Cx>& lam) {
  int e = 1;
  for (const auto& [n, f] : lam.modes) e = std::max(e, f.xdepth());
  return e;
}

}  // namespace

Interval sup_interval(const LambdaSymbol<Cx>& lam) {
  if (lam.is_zero()) return {0.0, 0.0};
  const int e = lambda_depth(lam);
  Interval best{0.0, 0.0};
  for (long long u : unit_residues(lam.s, e))
    best = iv_max(best, sup_interval(residue_slice(lam, u, e)));
  return best;
}

Interval ck_norm(const LambdaSymbol<Cx>& lam, int k) {
  Interval total{0.0, 0.0};
  LambdaSymbol<Cx> d = lam;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      LambdaSymbol<Cx> next(d.s);
      for (const auto& [n, f] : d.modes)
        if (n != 0) next.set(n, scaled(f, Cx(static_cast<double>(n), 0.0)));
      d = next;
    }
    total = iv_add(total, iv_scale(sup_interval(d), binomial(k, j)));
  }
  return total;
}

NormValue hs_norm(const Element<Cx>& a, int M, int N, double S, const NormOptions& opt) {
  TrigPoly<Cx> q = quotient_symbol(a);
  Element<Cx> c = a - toeplitz(a.base(), q);
  NormValue rest = mn_norm(c, M, N, opt);
  if (q.is_zero()) return rest;
  Interval head = iv_scale(ck_norm(q, M + N + 2), S);
  if (rest.kind == NormValue::Kind::Infinite) return make_infinite(head.lo + rest.lower);
  return make_interval(head.lo + rest.lower, head.hi + rest.upper);
}

}  // namespace hs
