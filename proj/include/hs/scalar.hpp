#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

namespace hs {

// Exact complex scalar with rational real and imaginary parts.  Used by the
// identity-level tests; all ring operations are exact, no rounding ever.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long long n) : re(static_cast<long>(n)), im(0) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
  using value_type = std::complex<double>;
  static constexpr bool exact = false;
  static value_type zero() { return {0.0, 0.0}; }
  static value_type one() { return {1.0, 0.0}; }
  static value_type imaginary_unit() { return {0.0, 1.0}; }
  static value_type from_int(long long n) { return {double(n), 0.0}; }
  static value_type from_ratio(long long num, long long den) { return {double(num) / double(den), 0.0}; }
  static value_type conjugate(const value_type& x) { return std::conj(x); }
  static bool is_zero(const value_type& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static std::complex<double> to_complex(const value_type& x) { return x; }
  static std::string mode_name() { return "float"; }
};

template <>
struct scalar_traits<GaussianRational> {
  using value_type = GaussianRational;
  static constexpr bool exact = true;
  static value_type zero() { return {}; }
  static value_type one() { return {1}; }
  static value_type imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }
  static value_type from_int(long long n) { return {n}; }
  static value_type from_ratio(long long num, long long den) {
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return {q, mpq_class(0)};
  }
  static value_type conjugate(const value_type& x) { return {x.re, -x.im}; }
  static bool is_zero(const value_type& x) { return x.re == 0 && x.im == 0; }
  static std::complex<double> to_complex(const value_type& x) { return {x.re.get_d(), x.im.get_d()}; }
  static std::string mode_name() { return "exact"; }
};

using Cx = std::complex<double>;
using XCx = GaussianRational;

// Deterministic random source.  The generator is the standard 64-bit
// Mersenne Twister (mt19937_64) seeded directly with the run seed; bounded
// draws use rejection so the stream does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t u64() { return gen_(); }

  std::uint64_t below(std::uint64_t n) {
    // rejection sampling; unbiased for every n >= 1
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    for (;;) {
      std::uint64_t x = gen_();
      if (x <= limit) return x % n;
    }
  }

  long long int_in(long long lo, long long hi) {  // inclusive range
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double real01() { return double(gen_() >> 11) * 0x1.0p-53; }

  double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hs
