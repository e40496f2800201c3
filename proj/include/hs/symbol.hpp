#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hs/sadic.hpp"
#include "hs/scalar.hpp"

namespace hs {

// Locally constant, eventually constant function G(m, x) on
// Z_{>=0} x (units of Z_s).  The x dependence factors through the residue
// mod s^e; the m dependence is explicit for m < d and frozen to a per-residue
// tail for m >= d.  Stored values are always in canonical form: d is minimal
// (row d-1 differs from the tail, or d = 0) and e is minimal (no coarser
// residue depth represents the same function).
//
// A symbol with tail constant across residues is (the restriction to the
// punctured space of) a continuous function on Z_s, the constant being its
// value at 0.  A symbol with identically zero tail vanishes at 0 along every
// approach; these are the coefficients of the ideal-type operators.
template <class S>
class DiagonalSymbol {
 public:
  using traits = scalar_traits<S>;

  DiagonalSymbol(int s, int e, std::vector<std::vector<S>> core, std::vector<S> tail)
      : s_(s), e_(e), core_(std::move(core)), tail_(std::move(tail)) {
    if (s_ < 2 || e_ < 1) throw std::invalid_argument("DiagonalSymbol: bad base or x-depth");
    const size_t u = static_cast<size_t>(unit_count(s_, e_));
    if (tail_.size() != u) throw std::invalid_argument("DiagonalSymbol: tail size mismatch");
    for (const auto& row : core_)
      if (row.size() != u) throw std::invalid_argument("DiagonalSymbol: core row size mismatch");
    canonicalize();
  }

  static DiagonalSymbol zero(int s) {
    return DiagonalSymbol(s, 1, {}, std::vector<S>(static_cast<size_t>(s - 1), traits::zero()));
  }

  static DiagonalSymbol constant(int s, const S& v) {
    return DiagonalSymbol(s, 1, {}, std::vector<S>(static_cast<size_t>(s - 1), v));
  }

  static DiagonalSymbol one(int s) { return constant(s, traits::one()); }

  // Indicator of the single level m = row (all residues), zero tail.
  static DiagonalSymbol row_indicator(int s, int row) {
    if (row < 0) throw std::invalid_argument("row_indicator: negative row");
    const size_t u = static_cast<size_t>(s - 1);
    std::vector<std::vector<S>> core(static_cast<size_t>(row) + 1,
                                     std::vector<S>(u, traits::zero()));
    core[static_cast<size_t>(row)].assign(u, traits::one());
    return DiagonalSymbol(s, 1, std::move(core), std::vector<S>(u, traits::zero()));
  }

  // Indicator of the set "m < rows" (levels 0..rows-1), zero tail.
  static DiagonalSymbol below_indicator(int s, int rows) {
    if (rows < 0) throw std::invalid_argument("below_indicator: negative count");
    const size_t u = static_cast<size_t>(s - 1);
    std::vector<std::vector<S>> core(static_cast<size_t>(rows), std::vector<S>(u, traits::one()));
    return DiagonalSymbol(s, 1, std::move(core), std::vector<S>(u, traits::zero()));
  }

  // Indicator of the cylinder x = r mod s^e.  For r = 0 this is the set
  // of points with valuation >= e; otherwise valuation(r) rows below the
  // nonzero level are zero and the unit part is pinned mod s^(e-val).
  static DiagonalSymbol cylinder(int s, int e, long long r) {
    if (e < 1) throw std::invalid_argument("cylinder: depth must be positive");
    const long long mod = pow_ll(s, e);
    if (r < 0 || r >= mod) throw std::invalid_argument("cylinder: residue out of range");
    if (r == 0) {
      const size_t u = static_cast<size_t>(s - 1);
      std::vector<std::vector<S>> core(static_cast<size_t>(e), std::vector<S>(u, traits::zero()));
      return DiagonalSymbol(s, 1, std::move(core), std::vector<S>(u, traits::one()));
    }
    int v = 0;
    long long rr = r;
    while (rr % s == 0) {
      rr /= s;
      ++v;
    }
    const int eu = e - v;  // residue depth of the unit part
    const auto units = unit_residues(s, eu);
    const size_t u = units.size();
    std::vector<std::vector<S>> core(static_cast<size_t>(v) + 1, std::vector<S>(u, traits::zero()));
    for (size_t c = 0; c < u; ++c)
      if (units[c] == rr) core[static_cast<size_t>(v)][c] = traits::one();
    return DiagonalSymbol(s, eu, std::move(core), std::vector<S>(u, traits::zero()));
  }

  // Builds the symbol of a depth-k cylinder function given its values on the
  // residues mod s^k (values[r] is the value on the cylinder at r).  k = 0
  // means a constant function with values = {c}.
  static DiagonalSymbol from_cylinder_function(int s, int k, const std::vector<S>& values) {
    if (k < 0) throw std::invalid_argument("from_cylinder_function: negative depth");
    const long long mod = pow_ll(s, k);
    if (static_cast<long long>(values.size()) != mod)
      throw std::invalid_argument("from_cylinder_function: wrong number of values");
    if (k == 0) return constant(s, values[0]);
    const auto units = unit_residues(s, k);
    const size_t u = units.size();
    std::vector<std::vector<S>> core(static_cast<size_t>(k), std::vector<S>(u, traits::zero()));
    long long p = 1;
    for (int m = 0; m < k; ++m) {
      for (size_t c = 0; c < u; ++c) core[static_cast<size_t>(m)][c] = values[static_cast<size_t>((units[c] * p) % mod)];
      p *= s;
    }
    return DiagonalSymbol(s, k, std::move(core), std::vector<S>(u, values[0]));
  }

  template <class Fn>
  static DiagonalSymbol build(int s, int e, int d, Fn&& fn, std::vector<S> tail) {
    const auto units = unit_residues(s, e);
    std::vector<std::vector<S>> core(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) {
      core[static_cast<size_t>(m)].reserve(units.size());
      for (long long r : units) core[static_cast<size_t>(m)].push_back(fn(m, r));
    }
    return DiagonalSymbol(s, e, std::move(core), std::move(tail));
  }

  int base() const { return s_; }
  int xdepth() const { return e_; }
  int mdepth() const { return static_cast<int>(core_.size()); }
  const std::vector<std::vector<S>>& core() const { return core_; }
  const std::vector<S>& tail() const { return tail_; }

  // Value by column index at the symbol's own x-depth; any m is allowed.
  const S& value(int m, size_t col) const {
    if (m < 0) throw std::invalid_argument("DiagonalSymbol::value: negative level");
    if (m < mdepth()) return core_[static_cast<size_t>(m)][col];
    return tail_[col];
  }

  // Value at a unit residue given mod s^rdepth with rdepth >= e.
  const S& value_at(int m, long long residue, int rdepth) const {
    if (rdepth < e_) throw std::invalid_argument("DiagonalSymbol::value_at: residue depth too coarse");
    long long r = residue % pow_ll(s_, e_);
    return value(m, static_cast<size_t>(unit_index(s_, r)));
  }

  bool is_zero() const {
    if (!core_.empty()) return false;
    for (const auto& t : tail_)
      if (!traits::is_zero(t)) return false;
    return true;
  }

  bool zero_tail() const {
    for (const auto& t : tail_)
      if (!traits::is_zero(t)) return false;
    return true;
  }

  bool tail_constant() const {
    for (const auto& t : tail_)
      if (!(t == tail_[0])) return false;
    return true;
  }

  friend bool operator==(const DiagonalSymbol& a, const DiagonalSymbol& b) {
    return a.s_ == b.s_ && a.e_ == b.e_ && a.core_ == b.core_ && a.tail_ == b.tail_;
  }
  friend bool operator!=(const DiagonalSymbol& a, const DiagonalSymbol& b) { return !(a == b); }

  DiagonalSymbol refined(int new_e) const {
    if (new_e < e_) throw std::invalid_argument("DiagonalSymbol::refined: cannot coarsen");
    if (new_e == e_) return *this;
    const auto units = unit_residues(s_, new_e);
    const long long mod = pow_ll(s_, e_);
    std::vector<std::vector<S>> core(core_.size());
    std::vector<S> tail;
    tail.reserve(units.size());
    for (long long r : units) tail.push_back(tail_[static_cast<size_t>(unit_index(s_, r % mod))]);
    for (size_t m = 0; m < core_.size(); ++m) {
      core[m].reserve(units.size());
      for (long long r : units) core[m].push_back(core_[m][static_cast<size_t>(unit_index(s_, r % mod))]);
    }
    DiagonalSymbol out;
    out.s_ = s_;
    out.e_ = new_e;
    out.core_ = std::move(core);
    out.tail_ = std::move(tail);
    return out;  // refinement of a canonical symbol needs no re-canonicalization of d
  }

 private:
  DiagonalSymbol() = default;

  void canonicalize() {
    while (!core_.empty() && core_.back() == tail_) core_.pop_back();
    // reduce x-depth while every block of sibling residues agrees
    while (e_ > 1) {
      const auto fine = unit_residues(s_, e_);
      const long long coarse_mod = pow_ll(s_, e_ - 1);
      const auto coarse = unit_residues(s_, e_ - 1);
      bool collapsible = true;
      for (size_t c = 0; collapsible && c < fine.size(); ++c) {
        const size_t parent = static_cast<size_t>(unit_index(s_, fine[c] % coarse_mod));
        const size_t rep = static_cast<size_t>(unit_index(s_, coarse[parent]));
        // compare column c against the column of the canonical lift (the
        // coarse residue itself is one of the fine residues)
        if (!(tail_[c] == tail_[rep])) collapsible = false;
        for (size_t m = 0; collapsible && m < core_.size(); ++m)
          if (!(core_[m][c] == core_[m][rep])) collapsible = false;
      }
      if (!collapsible) break;
      std::vector<S> tail;
      tail.reserve(coarse.size());
      for (long long r : coarse) tail.push_back(tail_[static_cast<size_t>(unit_index(s_, r))]);
      std::vector<std::vector<S>> core(core_.size());
      for (size_t m = 0; m < core_.size(); ++m) {
        core[m].reserve(coarse.size());
        for (long long r : coarse) core[m].push_back(core_[m][static_cast<size_t>(unit_index(s_, r))]);
      }
      tail_ = std::move(tail);
      core_ = std::move(core);
      --e_;
    }
  }

  template <class T, class Op>
  friend DiagonalSymbol<T> zip_symbols(const DiagonalSymbol<T>&, const DiagonalSymbol<T>&, Op&&);

  int s_ = 2;
  int e_ = 1;
  std::vector<std::vector<S>> core_;  // core_[m][col]
  std::vector<S> tail_;
};

template <class S, class Op>
DiagonalSymbol<S> zip_symbols(const DiagonalSymbol<S>& a, const DiagonalSymbol<S>& b, Op&& op) {
  if (a.base() != b.base()) throw std::invalid_argument("DiagonalSymbol: base mismatch");
  const int e = std::max(a.xdepth(), b.xdepth());
  const DiagonalSymbol<S> ar = a.refined(e), br = b.refined(e);
  const int d = std::max(ar.mdepth(), br.mdepth());
  const size_t u = ar.tail().size();
  std::vector<std::vector<S>> core(static_cast<size_t>(d), std::vector<S>(u, scalar_traits<S>::zero()));
  std::vector<S> tail(u, scalar_traits<S>::zero());
  for (int m = 0; m < d; ++m)
    for (size_t c = 0; c < u; ++c) core[static_cast<size_t>(m)][c] = op(ar.value(m, c), br.value(m, c));
  for (size_t c = 0; c < u; ++c) tail[c] = op(ar.tail()[c], br.tail()[c]);
  return DiagonalSymbol<S>(a.base(), e, std::move(core), std::move(tail));
}

template <class S>
DiagonalSymbol<S> operator+(const DiagonalSymbol<S>& a, const DiagonalSymbol<S>& b) {
  return zip_symbols(a, b, [](const S& x, const S& y) { return x + y; });
}

template <class S>
DiagonalSymbol<S> operator-(const DiagonalSymbol<S>& a, const DiagonalSymbol<S>& b) {
  return zip_symbols(a, b, [](const S& x, const S& y) { return x - y; });
}

template <class S>
DiagonalSymbol<S> operator*(const DiagonalSymbol<S>& a, const DiagonalSymbol<S>& b) {
  return zip_symbols(a, b, [](const S& x, const S& y) { return x * y; });
}

template <class S>
DiagonalSymbol<S> scaled(const DiagonalSymbol<S>& a, const S& c) {
  std::vector<std::vector<S>> core = a.core();
  std::vector<S> tail = a.tail();
  for (auto& row : core)
    for (auto& v : row) v = v * c;
  for (auto& v : tail) v = v * c;
  return DiagonalSymbol<S>(a.base(), a.xdepth(), std::move(core), std::move(tail));
}

template <class S>
DiagonalSymbol<S> scaled_int(const DiagonalSymbol<S>& a, long long n) {
  return scaled(a, scalar_traits<S>::from_int(n));
}

template <class S>
DiagonalSymbol<S> negated(const DiagonalSymbol<S>& a) {
  return scaled_int(a, -1);
}

template <class S>
DiagonalSymbol<S> conjugated(const DiagonalSymbol<S>& a) {
  std::vector<std::vector<S>> core = a.core();
  std::vector<S> tail = a.tail();
  for (auto& row : core)
    for (auto& v : row) v = scalar_traits<S>::conjugate(v);
  for (auto& v : tail) v = scalar_traits<S>::conjugate(v);
  return DiagonalSymbol<S>(a.base(), a.xdepth(), std::move(core), std::move(tail));
}

// (alpha G)(m, x) = G(m-1, x) with a fresh zero level at m = 0: composition
// with division by s on the underlying space, extended by 0 off its range.
template <class S>
DiagonalSymbol<S> alpha(const DiagonalSymbol<S>& a) {
  std::vector<std::vector<S>> core;
  core.reserve(a.core().size() + 1);
  core.emplace_back(a.tail().size(), scalar_traits<S>::zero());
  for (const auto& row : a.core()) core.push_back(row);
  return DiagonalSymbol<S>(a.base(), a.xdepth(), std::move(core), a.tail());
}

// (beta G)(m, x) = G(m+1, x): composition with multiplication by s.
template <class S>
DiagonalSymbol<S> beta(const DiagonalSymbol<S>& a) {
  if (a.mdepth() == 0) return a;
  std::vector<std::vector<S>> core(a.core().begin() + 1, a.core().end());
  return DiagonalSymbol<S>(a.base(), a.xdepth(), std::move(core), a.tail());
}

template <class S>
DiagonalSymbol<S> alpha_pow(DiagonalSymbol<S> a, int k) {
  for (int i = 0; i < k; ++i) a = alpha(a);
  return a;
}

template <class S>
DiagonalSymbol<S> beta_pow(DiagonalSymbol<S> a, int k) {
  for (int i = 0; i < k; ++i) a = beta(a);
  return a;
}

// Mean over the invertible fibers with respect to normalized Haar measure,
// i.e. the plain average over the unit residues at the symbol's x-depth.
// Defined only for level-independent symbols (canonical d = 0).
template <class S>
S e1_average(const DiagonalSymbol<S>& a) {
  if (a.mdepth() != 0)
    throw std::domain_error("e1_average: symbol depends on the level index");
  S acc = scalar_traits<S>::zero();
  for (const auto& v : a.tail()) acc += v;
  return acc * scalar_traits<S>::from_ratio(1, static_cast<long long>(a.tail().size()));
}

// sup |G| over all levels and residues (float scalars).
inline double sup_norm(const DiagonalSymbol<Cx>& a) {
  double m = 0.0;
  for (const auto& row : a.core())
    for (const auto& v : row) m = std::max(m, std::abs(v));
  for (const auto& v : a.tail()) m = std::max(m, std::abs(v));
  return m;
}

// sup (1+m)^N |G(m, x)|; +infinity when N >= 1 and the tail does not vanish.
inline double weighted_sup(const DiagonalSymbol<Cx>& a, int N) {
  if (N < 0) throw std::invalid_argument("weighted_sup: negative weight order");
  if (N == 0) return sup_norm(a);
  if (!a.zero_tail()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (int r = 0; r < a.mdepth(); ++r) {
    double w = std::pow(1.0 + r, N);
    for (const auto& v : a.core()[static_cast<size_t>(r)]) m = std::max(m, w * std::abs(v));
  }
  return m;
}

}  // namespace hs
