#include "hs/inequalities.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace hs {

double default_defect_constant() { return std::numbers::pi * std::numbers::pi / 3.0 - 1.0; }

namespace {

struct Comparison {
  Interval lhs;
  Interval rhs;
  bool equality = false;  // certified as |lhs - rhs| small instead of lhs <= rhs
};

enum class Verdict { Pass, Fail, Inconclusive };

Verdict judge(const Comparison& c, double tol) {
  if (c.equality) {
    const double scale = std::max({1.0, std::abs(c.lhs.hi), std::abs(c.rhs.hi)});
    return std::abs(c.lhs.hi - c.rhs.hi) <= 1e-12 * scale ? Verdict::Pass : Verdict::Fail;
  }
  const double scale = std::max({1.0, c.lhs.hi, c.rhs.lo});
  if (c.lhs.hi <= c.rhs.lo + tol * scale) return Verdict::Pass;
  if (c.lhs.lo > c.rhs.hi + tol * scale) return Verdict::Fail;
  return Verdict::Inconclusive;
}

double margin(const Comparison& c) {
  if (c.equality) return -std::abs(c.lhs.hi - c.rhs.hi);
  return c.rhs.lo - c.lhs.hi;
}

using Instance = std::function<std::vector<Comparison>(int idx, const NormOptions&)>;

// Runs `count` instances of one family; an inconclusive instance is retried
// with doubled truncation until the cap.
InequalityReport run_family(const std::string& name, const HarnessConfig& cfg, int count,
                            const Instance& instance) {
  InequalityReport rep;
  rep.inequality = name;
  rep.instances = count;
  rep.seed = cfg.seed;
  bool any_fail = false, any_inconclusive = false;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    NormOptions opt{cfg.m_cut};
    for (;;) {
      std::vector<Comparison> cmps = instance(i, opt);
      Verdict v = Verdict::Pass;
      for (const auto& c : cmps) {
        Verdict w = judge(c, cfg.tol);
        if (w == Verdict::Fail) v = Verdict::Fail;
        else if (w == Verdict::Inconclusive && v == Verdict::Pass) v = Verdict::Inconclusive;
      }
      if (v == Verdict::Inconclusive && 2 * opt.m_cut <= cfg.m_cut_cap) {
        opt.m_cut *= 2;
        continue;
      }
      for (const auto& c : cmps) worst = std::min(worst, margin(c));
      if (v == Verdict::Fail) any_fail = true;
      if (v == Verdict::Inconclusive) any_inconclusive = true;
      break;
    }
  }
  rep.status = any_fail ? "fail" : (any_inconclusive ? "inconclusive" : "pass");
  rep.worst_margin = std::isfinite(worst) ? worst : 0.0;
  return rep;
}

Interval iv_pow(Interval a, int p) {
  Interval out{1.0, 1.0};
  for (int i = 0; i < p; ++i) out = iv_mul(out, a);
  return out;
}

Interval iv_one_plus(const Interval& a) { return {1.0 + a.lo, 1.0 + a.hi}; }

Element<Cx> draw_ideal(int s, Rng& rng, const RandomOptions& opt) {
  for (;;) {
    Element<Cx> a = random_ideal_element<Cx>(s, rng, opt);
    if (!a.is_zero()) return a;
  }
}

Element<Cx> draw_self_adjoint_ideal(int s, Rng& rng, const RandomOptions& opt) {
  for (;;) {
    Element<Cx> a = self_adjoint_part(draw_ideal(s, rng, opt));
    if (!a.is_zero()) return a;
  }
}

TrigPoly<Cx> draw_trig(Rng& rng, const RandomOptions& opt, bool real_valued) {
  for (;;) {
    TrigPoly<Cx> p = random_trig_poly<Cx>(rng, opt, real_valued);
    if (!p.is_zero()) return p;
  }
}

LambdaSymbol<Cx> draw_lambda(int s, Rng& rng, const RandomOptions& opt) {
  for (;;) {
    LambdaSymbol<Cx> l = random_lambda_symbol<Cx>(s, rng, opt);
    if (!l.is_zero()) return l;
  }
}

// Rescale a to a target plain norm in [0.4, 1.2]; keeps exponential
// truncation orders small.
Element<Cx> normalize_for_exp(const Element<Cx>& a, Rng& rng, const NormOptions& opt) {
  const double norm = n_norm(a, 0, opt).value;
  const double target = 0.4 + 0.8 * rng.real01();
  return scaled(a, Cx(target / std::max(norm, 1e-12), 0.0));
}

Rng family_rng(const HarnessConfig& cfg, int ordinal) {
  return Rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<unsigned long long>(ordinal + 1)));
}

}  // namespace

std::vector<InequalityReport> verify_inequalities(const HarnessConfig& cfg) {
  std::vector<InequalityReport> out;
  const int s = cfg.s;
  const int exp_count = std::min(cfg.count, 50);

  RandomOptions exp_opt = cfg.rand;
  exp_opt.support = 2;
  exp_opt.depth_d = 1;
  exp_opt.num_terms = 2;

  {  // ‖a‖_N nondecreasing in N
    Rng rng = family_rng(cfg, 0);
    out.push_back(run_family("nprop1_monotone_N", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int N = i % 3;
      return {{n_norm(a, N, opt).iv(), n_norm(a, N + 1, opt).iv()}};
    }));
  }
  {  // ‖ab‖_N <= ‖a‖ ‖b‖_N <= ‖a‖_N ‖b‖_N
    Rng rng = family_rng(cfg, 1);
    out.push_back(run_family("nprop2_submult", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      Element<Cx> b = draw_ideal(s, rng, cfg.rand);
      const int N = i % 3;
      Interval mid = iv_mul(n_norm(a, 0, opt).iv(), n_norm(b, N, opt).iv());
      return {{n_norm(a * b, N, opt).iv(), mid},
              {mid, iv_mul(n_norm(a, N, opt).iv(), n_norm(b, N, opt).iv())}};
    }));
  }
  {  // ‖a*‖_N <= sum_j binom(N,j) ‖delta_p^j a‖_N
    Rng rng = family_rng(cfg, 2);
    out.push_back(run_family("nprop3_adjoint", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int N = i % 3;
      return {{n_norm(a.adjoint(), N, opt).iv(), mn_norm(a, N, N, opt).iv()}};
    }));
  }
  {  // ‖a‖_{M+1,N} = ‖a‖_{M,N} + ‖delta_p(a)‖_{M,N}
    Rng rng = family_rng(cfg, 3);
    out.push_back(run_family("mnprop2_recursion", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 2;
      Interval lhs = mn_norm(a, M + 1, N, opt).iv();
      Interval rhs = iv_add(mn_norm(a, M, N, opt).iv(), mn_norm(delta_p(a), M, N, opt).iv());
      return {{lhs, rhs, /*equality=*/true}};
    }));
  }
  {  // ‖a‖_{M,N} <= ‖a‖_{M,N+1}
    Rng rng = family_rng(cfg, 4);
    out.push_back(run_family("mnprop3_monotone_N", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 3;
      return {{mn_norm(a, M, N, opt).iv(), mn_norm(a, M, N + 1, opt).iv()}};
    }));
  }
  {  // ‖ab‖_{M,N} <= ‖a‖_{M,0} ‖b‖_{M,N} <= ‖a‖_{M,N} ‖b‖_{M,N}
    Rng rng = family_rng(cfg, 5);
    out.push_back(run_family("mnprop4_submult", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      Element<Cx> b = draw_ideal(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 3;
      Interval mid = iv_mul(mn_norm(a, M, 0, opt).iv(), mn_norm(b, M, N, opt).iv());
      return {{mn_norm(a * b, M, N, opt).iv(), mid},
              {mid, iv_mul(mn_norm(a, M, N, opt).iv(), mn_norm(b, M, N, opt).iv())}};
    }));
  }
  {  // ‖delta_p(a)‖_{M,N} <= ‖a‖_{M+1,N}
    Rng rng = family_rng(cfg, 6);
    out.push_back(run_family("mnprop5_delta", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 3;
      return {{mn_norm(delta_p(a), M, N, opt).iv(), mn_norm(a, M + 1, N, opt).iv()}};
    }));
  }
  {  // ‖a*‖_{M,N} <= ‖a‖_{M+N,N}
    Rng rng = family_rng(cfg, 7);
    out.push_back(run_family("mnprop6_adjoint", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 3;
      return {{mn_norm(a.adjoint(), M, N, opt).iv(), mn_norm(a, M + N, N, opt).iv()}};
    }));
  }
  {  // ‖T(phi) c‖_{M,N} <= ‖phi‖_{C^M} ‖c‖_{M,N}
    Rng rng = family_rng(cfg, 8);
    out.push_back(run_family("ctf_estimate_left", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> c = draw_ideal(s, rng, cfg.rand);
      TrigPoly<Cx> phi = draw_trig(rng, cfg.rand, false);
      const int M = i % 3, N = (i / 3) % 3;
      return {{mn_norm(toeplitz(s, phi) * c, M, N, opt).iv(),
               iv_mul(ck_norm(phi, M), mn_norm(c, M, N, opt).iv())}};
    }));
  }
  {  // ‖c T(phi)‖_{M,N} <= ‖phi‖_{C^{M+N}} ‖c‖_{M,N}
    Rng rng = family_rng(cfg, 9);
    out.push_back(run_family("ctf_estimate_right", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> c = draw_ideal(s, rng, cfg.rand);
      TrigPoly<Cx> phi = draw_trig(rng, cfg.rand, false);
      const int M = i % 3, N = (i / 3) % 3;
      return {{mn_norm(c * toeplitz(s, phi), M, N, opt).iv(),
               iv_mul(ck_norm(phi, M + N), mn_norm(c, M, N, opt).iv())}};
    }));
  }
  {  // generalized Toeplitz product estimates, both sides
    Rng rng = family_rng(cfg, 10);
    out.push_back(run_family("gen_toeplitz_estimates", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> c = draw_ideal(s, rng, cfg.rand);
      LambdaSymbol<Cx> lam = draw_lambda(s, rng, cfg.rand);
      Element<Cx> tl = gen_toeplitz(lam);
      const int M = i % 3, N = (i / 3) % 3;
      Interval cn = mn_norm(c, M, N, opt).iv();
      return {{mn_norm(tl * c, M, N, opt).iv(), iv_mul(ck_norm(lam, M), cn)},
              {mn_norm(c * tl, M, N, opt).iv(), iv_mul(ck_norm(lam, M + N), cn)}};
    }));
  }
  {  // generalized Toeplitz commutation defect bound
    Rng rng = family_rng(cfg, 11);
    out.push_back(run_family("gen_toeplitz_defect_bound", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      LambdaSymbol<Cx> lam = draw_lambda(s, rng, cfg.rand);
      LambdaSymbol<Cx> om = draw_lambda(s, rng, cfg.rand);
      const int M = i % 3, N = (i / 3) % 3;
      Element<Cx> defect = gen_toeplitz(lam) * gen_toeplitz(om) - gen_toeplitz(lam * om);
      Interval rhs = iv_scale(iv_mul(ck_norm(om, M + N + 2), ck_norm(lam, M)),
                              cfg.defect_constant);
      return {{mn_norm(defect, M, N, opt).iv(), rhs}};
    }));
  }
  {  // Toeplitz commutation defect bound (instance 0 pinned to the sharp pair)
    Rng rng = family_rng(cfg, 12);
    out.push_back(run_family("toeplitz_defect_bound", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      TrigPoly<Cx> phi, psi;
      if (i == 0) {
        phi = TrigPoly<Cx>::mode(1, 1.0);
        psi = TrigPoly<Cx>::mode(-1, 1.0);
      } else {
        phi = draw_trig(rng, cfg.rand, false);
        psi = draw_trig(rng, cfg.rand, false);
      }
      const int M = i % 3, N = (i / 3) % 3;
      Element<Cx> defect = toeplitz(s, phi) * toeplitz(s, psi) - toeplitz(s, phi * psi);
      Interval rhs = iv_scale(iv_mul(ck_norm(psi, M + N + 2), ck_norm(phi, M)),
                              cfg.defect_constant);
      return {{mn_norm(defect, M, N, opt).iv(), rhs}};
    }));
  }
  {  // weight-commutator expansion in grading commutators
    Rng rng = family_rng(cfg, 13);
    out.push_back(run_family("partialjdpp_identity", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int j = 1 + i % 5;
      Element<Cx> rhs = Element<Cx>::zero(s);
      for (int k = 1; k <= j; ++k)
        rhs = rhs + scaled(right_weight(delta_p_pow(a, k), j - k),
                           Cx(binomial(j, k), 0.0));
      Interval diff = n_norm(partial_j(a, j) - rhs, 0, opt).iv();
      return {{diff, {0.0, 0.0}, /*equality=*/true}};
    }));
  }
  {  // grading commutators in weight-commutator expansion
    Rng rng = family_rng(cfg, 14);
    out.push_back(run_family("dpppartialj_identity", cfg, cfg.count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      const int j = 1 + i % 5;
      Element<Cx> rhs = Element<Cx>::zero(s);
      for (int k = 1; k <= j; ++k) {
        const double sign = (j - k) % 2 == 0 ? 1.0 : -1.0;
        rhs = rhs + scaled(right_weight(partial_j(a, k), j - k),
                           Cx(sign * binomial(j, k), 0.0));
      }
      Interval diff = n_norm(delta_p_pow(a, j) - rhs, 0, opt).iv();
      return {{diff, {0.0, 0.0}, /*equality=*/true}};
    }));
  }
  {  // ‖e^{ia} - I‖_{0,N} <= ‖a‖_{0,N}
    Rng rng = family_rng(cfg, 15);
    out.push_back(run_family("expcminusI_0N", cfg, exp_count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = normalize_for_exp(draw_self_adjoint_ideal(s, rng, exp_opt), rng, opt);
      const int N = i % 3;
      ExpResult e = exp_i(a, 1e-13, opt);
      Interval lhs = n_norm(e.value - Element<Cx>::identity(s), N, opt).iv();
      lhs.hi += exp_tail_mn(e.rho, e.window, e.K, 0, N);
      return {{lhs, n_norm(a, N, opt).iv()}};
    }));
  }
  {  // ‖partial_j(e^{ia} - I)‖_{0,N} <= ‖partial_j(a)‖_{0,N} + ‖partial_j(a)‖ ‖a‖_{0,N}
    Rng rng = family_rng(cfg, 16);
    out.push_back(run_family("expcminusI_partialj", cfg, exp_count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = normalize_for_exp(draw_self_adjoint_ideal(s, rng, exp_opt), rng, opt);
      const int j = 1 + i % 3, N = i % 2;
      ExpResult e = exp_i(a, 1e-13, opt);
      Element<Cx> pj = partial_j(a, j);
      Interval lhs = n_norm(partial_j(e.value - Element<Cx>::identity(s), j), N, opt).iv();
      lhs.hi += exp_tail_partialj(e.rho, e.window, e.K, j, N);
      Interval rhs = iv_add(n_norm(pj, N, opt).iv(),
                            iv_mul(n_norm(pj, 0, opt).iv(), n_norm(a, N, opt).iv()));
      return {{lhs, rhs}};
    }));
  }
  {  // ‖e^{ic}‖_{M,0} <= prod_j (1 + ‖c‖_{j,0})^{2^{M-j}}
    Rng rng = family_rng(cfg, 17);
    out.push_back(run_family("eicestimate", cfg, exp_count,
                             [&](int i, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> c = normalize_for_exp(draw_self_adjoint_ideal(s, rng, exp_opt), rng, opt);
      const int M = 1 + i % 3;
      ExpResult e = exp_i(c, 1e-13, opt);
      Interval lhs = mn_norm(e.value, M, 0, opt).iv();
      lhs.hi += exp_tail_mn(e.rho, e.window, e.K, M, 0);
      Interval rhs{1.0, 1.0};
      for (int j = 1; j <= M; ++j)
        rhs = iv_mul(rhs, iv_pow(iv_one_plus(mn_norm(c, j, 0, opt).iv()), 1 << (M - j)));
      return {{lhs, rhs}};
    }));
  }
  {  // ‖e^{i phi}‖_{C^M} <= prod_j (1 + ‖phi‖_{C^j})
    Rng rng = family_rng(cfg, 18);
    out.push_back(run_family("eifestimate", cfg, exp_count,
                             [&](int i, const NormOptions&) -> std::vector<Comparison> {
      TrigPoly<Cx> phi = draw_trig(rng, cfg.rand, /*real_valued=*/true);
      const int M = 1 + i % 3;
      Interval lhs = ck_norm_exp_real(phi, M);
      Interval rhs{1.0, 1.0};
      for (int j = 1; j <= M; ++j) rhs = iv_mul(rhs, iv_one_plus(ck_norm(phi, j)));
      return {{lhs, rhs}};
    }));
  }
  {  // expectation is contractive: ‖E(a)‖ <= ‖a‖
    Rng rng = family_rng(cfg, 19);
    out.push_back(run_family("odonovan", cfg, cfg.count,
                             [&](int, const NormOptions& opt) -> std::vector<Comparison> {
      Element<Cx> a = draw_ideal(s, rng, cfg.rand);
      return {{n_norm(expectation(a), 0, opt).iv(), n_norm(a, 0, opt).iv()}};
    }));
  }
  return out;
}

bool all_pass(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.status != "pass") return false;
  return true;
}

}  // namespace hs
