#pragma once

#include "hs/element.hpp"
#include "hs/scalar.hpp"

namespace hs {

// Random data for property tests.  Everything is driven by the shared Rng so
// a (seed, count) pair pins the whole instance stream; scalars are small
// integer ratios so exact and float runs see the same values.
struct RandomOptions {
  int depth_d = 3;     // max level depth of symbol cores
  int depth_e = 2;     // max fiber depth
  int support = 4;     // max |n| of element terms
  int num_terms = 3;   // max number of nonzero terms per element
  int coeff_range = 3; // numerators drawn from [-range, range]
  bool zero_tail = false;
  bool constant_tail = false;
};

template <class S>
S random_scalar(Rng& rng, const RandomOptions& opt) {
  long long num_re = rng.int_in(-opt.coeff_range, opt.coeff_range);
  long long num_im = rng.int_in(-opt.coeff_range, opt.coeff_range);
  long long den = rng.int_in(1, 2);
  S re = scalar_traits<S>::from_ratio(num_re, den);
  S im = scalar_traits<S>::from_ratio(num_im, den) * scalar_traits<S>::imaginary_unit();
  return re + im;
}

template <class S>
S random_real_scalar(Rng& rng, const RandomOptions& opt) {
  long long num = rng.int_in(-opt.coeff_range, opt.coeff_range);
  long long den = rng.int_in(1, 2);
  return scalar_traits<S>::from_ratio(num, den);
}

template <class S>
DiagonalSymbol<S> random_symbol(int s, Rng& rng, const RandomOptions& opt) {
  int d = rng.int_in(0, opt.depth_d);
  int e = rng.int_in(1, opt.depth_e);
  int cols = unit_count(s, e);
  std::vector<std::vector<S>> core(d, std::vector<S>(cols));
  for (auto& row : core)
    for (auto& v : row) v = random_scalar<S>(rng, opt);
  std::vector<S> tail(cols, scalar_traits<S>::zero());
  if (!opt.zero_tail) {
    if (opt.constant_tail) {
      S t = random_scalar<S>(rng, opt);
      for (auto& v : tail) v = t;
    } else {
      for (auto& v : tail) v = random_scalar<S>(rng, opt);
    }
  }
  return DiagonalSymbol<S>(s, e, std::move(core), std::move(tail));
}

// Random normal-form element.  `ideal` forces vanishing tails, `algebra`
// forces constant tails (the default draws arbitrary tails, which lie in the
// extended multiplier-type algebra the symbols close under).
template <class S>
Element<S> random_element(int s, Rng& rng, RandomOptions opt,
                          bool ideal = false, bool algebra = true) {
  opt.zero_tail = ideal;
  opt.constant_tail = algebra && !ideal;
  Element<S> out(s);
  int terms = rng.int_in(1, opt.num_terms);
  for (int t = 0; t < terms; ++t) {
    int n = rng.int_in(-opt.support, opt.support);
    out.add_term(n, random_symbol<S>(s, rng, opt));
  }
  return out;
}

template <class S>
Element<S> random_ideal_element(int s, Rng& rng, const RandomOptions& opt) {
  return random_element<S>(s, rng, opt, /*ideal=*/true);
}

template <class S>
TrigPoly<S> random_trig_poly(Rng& rng, const RandomOptions& opt, bool real_valued = false) {
  TrigPoly<S> out;
  int deg = rng.int_in(1, opt.support);
  for (int n = -deg; n <= deg; ++n) {
    if (real_valued && n < 0) continue;
    if (rng.coin() && n != 0) continue;
    S c = random_scalar<S>(rng, opt);
    out.add(n, c);
    if (real_valued && n > 0) out.add(-n, scalar_traits<S>::conjugate(c));
  }
  if (real_valued) {
    // force a real constant mode
    S c0 = out.coeff(0);
    S re = (c0 + scalar_traits<S>::conjugate(c0)) * scalar_traits<S>::from_ratio(1, 2);
    out.set(0, re);
  }
  return out;
}

template <class S>
LambdaSymbol<S> random_lambda_symbol(int s, Rng& rng, const RandomOptions& opt) {
  LambdaSymbol<S> out(s);
  int deg = rng.int_in(1, opt.support);
  RandomOptions flat = opt;
  flat.depth_d = 0;
  for (int n = -deg; n <= deg; ++n) {
    if (rng.coin() && n != 0) continue;
    out.add(n, random_symbol<S>(s, rng, flat));
  }
  return out;
}

template <class S>
Element<S> random_self_adjoint(int s, Rng& rng, const RandomOptions& opt,
                               bool ideal = false) {
  Element<S> a = random_element<S>(s, rng, opt, ideal);
  return self_adjoint_part(a);
}

}  // namespace hs
