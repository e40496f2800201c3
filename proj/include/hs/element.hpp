#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "hs/symbol.hpp"
#include "hs/trigpoly.hpp"

namespace hs {

namespace detail {
// Test hook: deliberately perturbs one multiplication rule so the property
// suites can demonstrate they would catch a wrong product.  Production code
// always passes nullptr.
struct MulMutation {
  int rule = 1;  // 1 perturbs the V^n M_F * V^k M_G composition shift
};
}  // namespace detail

// Finite normal-form operator polynomial
//   a = sum_{n >= 0} V^n M_{F_n} + sum_{n < 0} M_{F_n} (V*)^{-n}
// with diagonal-symbol coefficients.  V is the isometry induced by
// multiplication by s, M_F the diagonal operator of F, both acting on the
// orbit space of the punctured s-adic integers.  The coefficient map is the
// element's canonical form; term n is absent when F_n = 0.
template <class S>
class Element {
 public:
  using traits = scalar_traits<S>;
  using Symbol = DiagonalSymbol<S>;

  explicit Element(int s) : s_(s) {
    if (s < 2) throw std::invalid_argument("Element: base must be at least 2");
  }

  static Element zero(int s) { return Element(s); }

  static Element identity(int s) { return term(0, Symbol::one(s)); }

  static Element term(int n, Symbol f) {
    Element out(f.base());
    if (!f.is_zero()) out.terms_.emplace(n, std::move(f));
    return out;
  }

  // V^k for k >= 0, (V*)^{-k} for k < 0.
  static Element shift(int s, int k) { return term(k, Symbol::one(s)); }

  static Element diag(Symbol f) { return term(0, std::move(f)); }

  int base() const { return s_; }
  const std::map<int, Symbol>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Symbol coefficient(int n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? Symbol::zero(s_) : it->second;
  }

  void add_term(int n, const Symbol& f) {
    if (f.base() != s_) throw std::invalid_argument("Element: base mismatch");
    auto it = terms_.find(n);
    if (it == terms_.end()) {
      if (!f.is_zero()) terms_.emplace(n, f);
      return;
    }
    Symbol sum = it->second + f;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = std::move(sum);
  }

  friend Element operator+(const Element& a, const Element& b) {
    check_bases(a, b);
    Element out = a;
    for (const auto& [n, f] : b.terms_) out.add_term(n, f);
    return out;
  }
  friend Element operator-(const Element& a, const Element& b) {
    check_bases(a, b);
    Element out = a;
    for (const auto& [n, f] : b.terms_) out.add_term(n, negated(f));
    return out;
  }
  Element operator-() const {
    Element out(s_);
    for (const auto& [n, f] : terms_) out.terms_.emplace(n, negated(f));
    return out;
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.s_ == b.s_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  friend Element operator*(const Element& a, const Element& b) { return mul(a, b, nullptr); }

  // Term-by-term composition.  Writing W_n for the n-th normal-form word
  // (V^n M_F when n >= 0, M_F (V*)^{-n} otherwise), the composition of two
  // words is again a single word; the four branches below are the complete
  // case analysis of how the shift parts commute past the diagonals.
  static Element mul(const Element& a, const Element& b, const detail::MulMutation* mutation) {
    check_bases(a, b);
    Element out(a.s_);
    for (const auto& [n, F] : a.terms_) {
      for (const auto& [k, G] : b.terms_) {
        out.add_term(n + k, word_product(n, F, k, G, mutation));
      }
    }
    return out;
  }

  Element adjoint() const {
    Element out(s_);
    for (const auto& [n, f] : terms_) out.terms_.emplace(-n, conjugated(f));
    return out;
  }

  // All coefficient tails vanish: the element lies in the ideal generated by
  // the rank projections (the "vanishing at 0" part of the algebra).
  bool in_ideal() const {
    for (const auto& [n, f] : terms_)
      if (!f.zero_tail()) return false;
    return true;
  }

  // All coefficient tails are constant across residues: the element lies in
  // the crossed product itself (coefficients continuous at 0).
  bool in_algebra() const {
    for (const auto& [n, f] : terms_)
      if (!f.tail_constant()) return false;
    return true;
  }

 private:
  static void check_bases(const Element& a, const Element& b) {
    if (a.s_ != b.s_) throw std::invalid_argument("Element: base mismatch");
  }

  static Symbol word_product(int n, const Symbol& F, int k, const Symbol& G,
                             const detail::MulMutation* mutation) {
    if (n >= 0 && k >= 0) {
      int shift = k;
      if (mutation && mutation->rule == 1 && k >= 1) shift = k + 1;
      return beta_pow(F, shift) * G;
    }
    if (n < 0 && k < 0) return F * beta_pow(G, -n);
    if (n >= 0 && k < 0) return alpha_pow(F * G, std::min(n, -k));
    // n < 0, k >= 0
    const int i = -n;
    if (k >= i) return beta_pow(F, k - i) * G;
    return F * beta_pow(G, i - k);
  }

  int s_;
  std::map<int, Symbol> terms_;
};

template <class S>
Element<S> scaled(const Element<S>& a, const S& c) {
  Element<S> out(a.base());
  for (const auto& [n, f] : a.terms()) out.add_term(n, scaled(f, c));
  return out;
}

template <class S>
Element<S> scaled_int(const Element<S>& a, long long c) {
  return scaled(a, scalar_traits<S>::from_int(c));
}

template <class S>
Element<S> commutator(const Element<S>& a, const Element<S>& b) {
  return a * b - b * a;
}

// Grading derivation: multiplies term n by n.  This is the commutator with
// the level-counting diagonal operator and is defined on every element.
template <class S>
Element<S> delta_p(const Element<S>& a) {
  Element<S> out(a.base());
  for (const auto& [n, f] : a.terms())
    if (n != 0) out.add_term(n, scaled_int(f, n));
  return out;
}

template <class S>
Element<S> delta_p_pow(Element<S> a, int j) {
  for (int i = 0; i < j; ++i) a = delta_p(a);
  return a;
}

// Commutator with the N-th power of (I + level counter), realized termwise:
// the coefficient at index m of term n picks up the weight
// (1+m+max(n,0))^j - (1+m+max(-n,0))^j.  The weights grow in m, so this is
// only defined for ideal-type elements, whose coefficients vanish eventually.
template <class S>
Element<S> partial_j(const Element<S>& a, int j) {
  if (j < 0) throw std::invalid_argument("partial_j: negative order");
  if (!a.in_ideal()) throw std::domain_error("partial_j: element must be ideal-type");
  Element<S> out(a.base());
  for (const auto& [n, f] : a.terms()) {
    const int up = n > 0 ? n : 0;
    const int dn = n < 0 ? -n : 0;
    auto fn = [&](int m, long long r) {
      long long w1 = 1, w2 = 1;
      for (int t = 0; t < j; ++t) {
        w1 *= (1 + m + up);
        w2 *= (1 + m + dn);
      }
      return f.value_at(m, r, f.xdepth()) * scalar_traits<S>::from_int(w1 - w2);
    };
    out.add_term(n, DiagonalSymbol<S>::build(a.base(), f.xdepth(), f.mdepth(), fn,
                                             std::vector<S>(f.tail().size(), scalar_traits<S>::zero())));
  }
  return out;
}

// Right multiplication by (I + level counter)^p, again termwise with the
// weight (1+m+max(-n,0))^p at coefficient index m; ideal-type only.
template <class S>
Element<S> right_weight(const Element<S>& a, int p) {
  if (p < 0) throw std::invalid_argument("right_weight: negative order");
  if (!a.in_ideal()) throw std::domain_error("right_weight: element must be ideal-type");
  Element<S> out(a.base());
  for (const auto& [n, f] : a.terms()) {
    const int dn = n < 0 ? -n : 0;
    auto fn = [&](int m, long long r) {
      long long w = 1;
      for (int t = 0; t < p; ++t) w *= (1 + m + dn);
      return f.value_at(m, r, f.xdepth()) * scalar_traits<S>::from_int(w);
    };
    out.add_term(n, DiagonalSymbol<S>::build(a.base(), f.xdepth(), f.mdepth(), fn,
                                             std::vector<S>(f.tail().size(), scalar_traits<S>::zero())));
  }
  return out;
}

// Circle action: term n is scaled by e^{2 pi i n theta} (float scalars).
inline Element<Cx> rho(const Element<Cx>& a, double theta) {
  Element<Cx> out(a.base());
  for (const auto& [n, f] : a.terms())
    out.add_term(n, scaled(f, std::polar(1.0, 2.0 * std::numbers::pi * n * theta)));
  return out;
}

// Conditional expectation onto the diagonal: keeps the n = 0 term.
template <class S>
Element<S> expectation(const Element<S>& a) {
  return Element<S>::term(0, a.coefficient(0));
}

template <class S>
DiagonalSymbol<S> fourier_coefficient(const Element<S>& a, int n) {
  return a.coefficient(n);
}

template <class S>
Element<S> fourier_term(const Element<S>& a, int n) {
  return Element<S>::term(n, a.coefficient(n));
}

// Image in the quotient by the ideal: the circle-algebra symbol whose mode n
// is the constant tail of coefficient n.  Requires tails constant.
template <class S>
TrigPoly<S> quotient_symbol(const Element<S>& a) {
  if (!a.in_algebra())
    throw std::domain_error("quotient_symbol: coefficient tails are not constant");
  TrigPoly<S> out;
  for (const auto& [n, f] : a.terms()) out.add(n, f.tail()[0]);
  return out;
}

// Multi-mode symbol with level-independent coefficients: a trig polynomial
// in theta whose coefficients are functions of the unit fiber.
template <class S>
struct LambdaSymbol {
  int s = 2;
  std::map<int, DiagonalSymbol<S>> modes;  // each mode has canonical d = 0

  explicit LambdaSymbol(int s_) : s(s_) {}

  void set(int n, const DiagonalSymbol<S>& f) {
    if (f.base() != s) throw std::invalid_argument("LambdaSymbol: base mismatch");
    if (f.mdepth() != 0)
      throw std::invalid_argument("LambdaSymbol: mode depends on the level index");
    if (f.is_zero())
      modes.erase(n);
    else
      modes.insert_or_assign(n, f);
  }

  void add(int n, const DiagonalSymbol<S>& f) {
    auto it = modes.find(n);
    if (it == modes.end())
      set(n, f);
    else
      set(n, it->second + f);
  }

  DiagonalSymbol<S> mode(int n) const {
    auto it = modes.find(n);
    return it == modes.end() ? DiagonalSymbol<S>::zero(s) : it->second;
  }

  bool is_zero() const { return modes.empty(); }
  bool theta_independent() const { return modes.empty() || (modes.size() == 1 && modes.begin()->first == 0); }
  bool x_independent() const {
    for (const auto& [n, f] : modes)
      if (f.xdepth() != 1 || !f.tail_constant()) return false;
    return true;
  }

  friend LambdaSymbol operator+(const LambdaSymbol& a, const LambdaSymbol& b) {
    LambdaSymbol out = a;
    for (const auto& [n, f] : b.modes) out.add(n, f);
    return out;
  }
  friend LambdaSymbol operator-(const LambdaSymbol& a, const LambdaSymbol& b) {
    LambdaSymbol out = a;
    for (const auto& [n, f] : b.modes) out.add(n, negated(f));
    return out;
  }
  friend LambdaSymbol operator*(const LambdaSymbol& a, const LambdaSymbol& b) {
    LambdaSymbol out(a.s);
    for (const auto& [n, f] : a.modes)
      for (const auto& [m, g] : b.modes) out.add(n + m, f * g);
    return out;
  }
  friend bool operator==(const LambdaSymbol& a, const LambdaSymbol& b) {
    return a.s == b.s && a.modes == b.modes;
  }
};

// Boundary symbol: mode n is the tail function of coefficient n, as a
// level-independent symbol.  For elements of the crossed product this is the
// quotient symbol seen fiberwise.
template <class S>
LambdaSymbol<S> boundary_symbol(const Element<S>& a) {
  LambdaSymbol<S> out(a.base());
  for (const auto& [n, f] : a.terms()) {
    DiagonalSymbol<S> t(a.base(), f.xdepth(), {}, f.tail());
    if (!t.is_zero()) out.set(n, t);
  }
  return out;
}

// T(phi) = sum_{n>=0} phi_n V^n + sum_{n<0} phi_n (V*)^{-n}.
template <class S>
Element<S> toeplitz(int s, const TrigPoly<S>& phi) {
  Element<S> out(s);
  for (const auto& [n, c] : phi.coeffs())
    out.add_term(n, DiagonalSymbol<S>::constant(s, c));
  return out;
}

// Generalized Toeplitz operator of a multi-mode symbol.
template <class S>
Element<S> gen_toeplitz(const LambdaSymbol<S>& lam) {
  Element<S> out(lam.s);
  for (const auto& [n, f] : lam.modes) out.add_term(n, f);
  return out;
}

// Matrix unit E_{ij} of the level grading: V^{i-j} M_{chi_j} for i >= j,
// M_{chi_i} (V*)^{j-i} otherwise.
template <class S>
Element<S> matrix_unit(int s, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("matrix_unit: negative index");
  if (i >= j) return Element<S>::term(i - j, DiagonalSymbol<S>::row_indicator(s, j));
  return Element<S>::term(i - j, DiagonalSymbol<S>::row_indicator(s, i));
}

// Projection onto levels m < k.
template <class S>
Element<S> proj_below(int s, int k) {
  return Element<S>::diag(DiagonalSymbol<S>::below_indicator(s, k));
}

template <class S>
Element<S> self_adjoint_part(const Element<S>& a) {
  return scaled(a + a.adjoint(), scalar_traits<S>::from_ratio(1, 2));
}

inline double max_coeff_diff(const Element<Cx>& a, const Element<Cx>& b) {
  double m = 0.0;
  Element<Cx> d = a - b;
  for (const auto& [n, f] : d.terms()) m = std::max(m, sup_norm(f));
  return m;
}

inline double max_coeff_sup(const Element<Cx>& a) {
  double m = 0.0;
  for (const auto& [n, f] : a.terms()) m = std::max(m, sup_norm(f));
  return m;
}

template <class S>
Element<Cx> to_float(const Element<S>& a) {
  Element<Cx> out(a.base());
  for (const auto& [n, f] : a.terms()) {
    auto fn = [&](int m, long long r) {
      return scalar_traits<S>::to_complex(f.value_at(m, r, f.xdepth()));
    };
    std::vector<Cx> tail;
    for (const auto& t : f.tail()) tail.push_back(scalar_traits<S>::to_complex(t));
    out.add_term(n, DiagonalSymbol<Cx>::build(a.base(), f.xdepth(), f.mdepth(), fn, std::move(tail)));
  }
  return out;
}

template <class S>
TrigPoly<Cx> to_float(const TrigPoly<S>& p) {
  TrigPoly<Cx> out;
  for (const auto& [n, c] : p.coeffs()) out.set(n, scalar_traits<S>::to_complex(c));
  return out;
}

}  // namespace hs
