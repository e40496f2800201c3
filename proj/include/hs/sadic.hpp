#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hs {

// Truncated s-adic integer: little-endian digit vector of fixed depth.
// Depth is explicit and part of the value; operations on operands of
// different base or depth are rejected rather than silently coerced.
struct SAdicInt {
  int s = 2;
  std::vector<int> digits;  // digits[i] in [0, s), index i is the s^i digit

  int depth() const { return static_cast<int>(digits.size()); }
};

inline long long pow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (1LL << 61) / b) throw std::overflow_error("pow_ll: result does not fit");
    r *= b;
  }
  return r;
}

inline void check_sadic(const SAdicInt& a) {
  if (a.s < 2) throw std::invalid_argument("SAdicInt: base must be at least 2");
  if (a.digits.empty()) throw std::invalid_argument("SAdicInt: depth must be at least 1");
  for (int d : a.digits)
    if (d < 0 || d >= a.s) throw std::invalid_argument("SAdicInt: digit out of range");
}

inline void check_same_shape(const SAdicInt& a, const SAdicInt& b) {
  check_sadic(a);
  check_sadic(b);
  if (a.s != b.s) throw std::invalid_argument("SAdicInt: base mismatch");
  if (a.depth() != b.depth()) throw std::invalid_argument("SAdicInt: depth mismatch");
}

// Embeds an ordinary integer; negatives wrap to their s-complement
// representative mod s^depth.
inline SAdicInt sadic_from_int(int s, int depth, long long k) {
  if (s < 2 || depth < 1) throw std::invalid_argument("sadic_from_int: bad base or depth");
  long long mod = pow_ll(s, depth);
  long long v = ((k % mod) + mod) % mod;
  SAdicInt out{s, std::vector<int>(depth, 0)};
  for (int i = 0; i < depth; ++i) {
    out.digits[i] = static_cast<int>(v % s);
    v /= s;
  }
  return out;
}

// Value of the truncation as the canonical residue in [0, s^depth).
inline long long sadic_to_residue(const SAdicInt& a) {
  check_sadic(a);
  long long v = 0;
  for (int i = a.depth() - 1; i >= 0; --i) v = v * a.s + a.digits[i];
  return v;
}

inline SAdicInt sadic_add(const SAdicInt& a, const SAdicInt& b) {
  check_same_shape(a, b);
  SAdicInt out{a.s, std::vector<int>(a.depth(), 0)};
  int carry = 0;
  for (int i = 0; i < a.depth(); ++i) {
    int t = a.digits[i] + b.digits[i] + carry;
    out.digits[i] = t % a.s;
    carry = t / a.s;  // final carry falls off the truncation
  }
  return out;
}

inline SAdicInt sadic_mul(const SAdicInt& a, const SAdicInt& b) {
  check_same_shape(a, b);
  const int d = a.depth();
  std::vector<long long> acc(d, 0);
  for (int i = 0; i < d; ++i) {
    if (a.digits[i] == 0) continue;
    for (int j = 0; i + j < d; ++j) acc[i + j] += static_cast<long long>(a.digits[i]) * b.digits[j];
  }
  SAdicInt out{a.s, std::vector<int>(d, 0)};
  long long carry = 0;
  for (int i = 0; i < d; ++i) {
    long long t = acc[i] + carry;
    out.digits[i] = static_cast<int>(t % a.s);
    carry = t / a.s;
  }
  return out;
}

// |x|_s = s^(-v) where v is the index of the first nonzero digit.  A value
// that vanishes through the whole truncation cannot be distinguished from 0,
// so that case is flagged instead of given a norm.
struct SNorm {
  bool zero_at_depth = false;
  int valuation = 0;   // meaningful only when !zero_at_depth
  long long num = 0;   // exact value num/den of s^(-valuation); 0/1 when flagged
  long long den = 1;
};

inline SNorm snorm(const SAdicInt& a) {
  check_sadic(a);
  for (int i = 0; i < a.depth(); ++i) {
    if (a.digits[i] != 0) return SNorm{false, i, 1, pow_ll(a.s, i)};
  }
  return SNorm{true, 0, 0, 1};
}

// x = s^m * unit with the unit's leading digit nonzero.  The unit keeps the
// digits that survive the shift, so its depth is depth(x) - m.
struct ValuationSplit {
  bool is_zero = false;
  int m = 0;
  SAdicInt unit;
};

inline ValuationSplit valuation_split(const SAdicInt& a) {
  check_sadic(a);
  for (int i = 0; i < a.depth(); ++i) {
    if (a.digits[i] != 0) {
      SAdicInt u{a.s, std::vector<int>(a.digits.begin() + i, a.digits.end())};
      return ValuationSplit{false, i, std::move(u)};
    }
  }
  return ValuationSplit{true, 0, SAdicInt{a.s, {0}}};
}

// Reassembles s^m * unit at the given depth (digits beyond the truncation drop).
inline SAdicInt valuation_recombine(int s, int depth, int m, const SAdicInt& unit) {
  SAdicInt out{s, std::vector<int>(depth, 0)};
  for (int i = 0; i < unit.depth() && m + i < depth; ++i) out.digits[m + i] = unit.digits[i];
  check_sadic(out);
  return out;
}

inline long long unit_count(int s, int e) { return (s - 1) * pow_ll(s, e - 1); }

// Ascending residues r in [1, s^e) with r not divisible by s.  These index
// the invertible fibers at x-depth e everywhere in the library.
inline std::vector<long long> unit_residues(int s, int e) {
  if (s < 2 || e < 1) throw std::invalid_argument("unit_residues: bad base or depth");
  std::vector<long long> out;
  out.reserve(static_cast<size_t>(unit_count(s, e)));
  const long long top = pow_ll(s, e);
  for (long long r = 1; r < top; ++r)
    if (r % s != 0) out.push_back(r);
  return out;
}

// Position of a unit residue r in unit_residues(s, e); r must be a unit.
inline long long unit_index(int s, long long r) {
  if (r <= 0 || r % s == 0) throw std::invalid_argument("unit_index: not a unit residue");
  return (r - 1) - (r - 1) / s;
}

}  // namespace hs
