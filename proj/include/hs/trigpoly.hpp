#pragma once

#include <cmath>
#include <map>
#include <numbers>

#include "hs/scalar.hpp"

namespace hs {

// Trigonometric polynomial sum_n c_n e^{2 pi i n theta} with finitely many
// modes.  Zero coefficients are never stored.
template <class S>
class TrigPoly {
 public:
  using traits = scalar_traits<S>;

  TrigPoly() = default;

  static TrigPoly mode(int n, const S& c) {
    TrigPoly p;
    p.set(n, c);
    return p;
  }

  static TrigPoly constant(const S& c) { return mode(0, c); }

  const std::map<int, S>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  S coeff(int n) const {
    auto it = c_.find(n);
    return it == c_.end() ? traits::zero() : it->second;
  }

  void set(int n, const S& v) {
    if (traits::is_zero(v))
      c_.erase(n);
    else
      c_[n] = v;
  }

  void add(int n, const S& v) { set(n, coeff(n) + v); }

  int degree() const {  // max |n| over the support, 0 for the zero polynomial
    int d = 0;
    for (const auto& [n, v] : c_) d = std::max(d, std::abs(n));
    return d;
  }

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [n, v] : b.c_) out.add(n, v);
    return out;
  }
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [n, v] : b.c_) out.add(n, -v);
    return out;
  }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    for (const auto& [n, v] : a.c_)
      for (const auto& [m, w] : b.c_) out.add(n + m, v * w);
    return out;
  }
  TrigPoly operator-() const {
    TrigPoly out;
    for (const auto& [n, v] : c_) out.c_.emplace(n, -v);
    return out;
  }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.c_ == b.c_; }

  TrigPoly scaled(const S& c) const {
    TrigPoly out;
    for (const auto& [n, v] : c_) out.set(n, v * c);
    return out;
  }

  TrigPoly conjugated() const {  // pointwise complex conjugate
    TrigPoly out;
    for (const auto& [n, v] : c_) out.set(-n, traits::conjugate(v));
    return out;
  }

  TrigPoly shifted(int k) const {  // multiply by e^{2 pi i k theta}
    TrigPoly out;
    for (const auto& [n, v] : c_) out.c_.emplace(n + k, v);
    return out;
  }

  // (1 / 2 pi i) d/dtheta: multiplies mode n by n.
  TrigPoly derivative() const {
    TrigPoly out;
    for (const auto& [n, v] : c_) out.set(n, v * traits::from_int(n));
    return out;
  }

  TrigPoly strict_positive_part() const {
    TrigPoly out;
    for (const auto& [n, v] : c_)
      if (n > 0) out.c_.emplace(n, v);
    return out;
  }

  TrigPoly strict_negative_part() const {
    TrigPoly out;
    for (const auto& [n, v] : c_)
      if (n < 0) out.c_.emplace(n, v);
    return out;
  }

  bool is_real_valued() const {  // c_{-n} == conj(c_n) for every mode
    for (const auto& [n, v] : c_)
      if (!(coeff(-n) == traits::conjugate(v))) return false;
    return true;
  }

 private:
  std::map<int, S> c_;
};

inline Cx eval(const TrigPoly<Cx>& p, double theta) {
  Cx acc{0.0, 0.0};
  for (const auto& [n, v] : p.coeffs())
    acc += v * std::polar(1.0, 2.0 * std::numbers::pi * n * theta);
  return acc;
}

inline double coeff_abs_sum(const TrigPoly<Cx>& p) {
  double s = 0.0;
  for (const auto& [n, v] : p.coeffs()) s += std::abs(v);
  return s;
}

}  // namespace hs
