#include <doctest.h>

#include "hs/sadic.hpp"
#include "hs/scalar.hpp"

using namespace hs;

TEST_CASE("sadic embedding round-trips against integer arithmetic") {
  for (int s : {2, 3, 10}) {
    for (int depth = 1; depth <= 5; ++depth) {
      const long long mod = pow_ll(s, depth);
      for (long long k : {0LL, 1LL, 7LL, mod - 1, -1LL, -17LL, 3 * mod + 5}) {
        SAdicInt x = sadic_from_int(s, depth, k);
        CHECK(x.depth() == depth);
        CHECK(sadic_to_residue(x) == ((k % mod) + mod) % mod);
      }
    }
  }
}

TEST_CASE("sadic add and mul match modular integer oracle") {
  Rng rng(42);
  for (int s : {2, 3, 10}) {
    for (int depth : {1, 3, 6}) {
      const long long mod = pow_ll(s, depth);
      for (int i = 0; i < 200; ++i) {
        long long a = rng.int_in(0, mod - 1);
        long long b = rng.int_in(0, mod - 1);
        SAdicInt xa = sadic_from_int(s, depth, a);
        SAdicInt xb = sadic_from_int(s, depth, b);
        CHECK(sadic_to_residue(sadic_add(xa, xb)) == (a + b) % mod);
        CHECK(sadic_to_residue(sadic_mul(xa, xb)) == (a * b) % mod);
      }
    }
  }
}

TEST_CASE("snorm reads the first nonzero digit") {
  for (int s : {2, 3, 10}) {
    for (int v = 0; v < 4; ++v) {
      SAdicInt x = sadic_from_int(s, 6, pow_ll(s, v) * (s + 1));  // s+1 is a unit
      SNorm n = snorm(x);
      CHECK_FALSE(n.zero_at_depth);
      CHECK(n.valuation == v);
      CHECK(n.num == 1);
      CHECK(n.den == pow_ll(s, v));
    }
    SNorm z = snorm(sadic_from_int(s, 4, 0));
    CHECK(z.zero_at_depth);
  }
}

TEST_CASE("snorm is multiplicative for prime base") {
  Rng rng(7);
  for (int s : {2, 3}) {
    const int depth = 6;
    const long long mod = pow_ll(s, depth);
    for (int i = 0; i < 100; ++i) {
      long long a = rng.int_in(1, mod - 1);
      long long b = rng.int_in(1, mod - 1);
      SAdicInt xa = sadic_from_int(s, depth, a);
      SAdicInt xb = sadic_from_int(s, depth, b);
      SNorm na = snorm(xa), nb = snorm(xb), nab = snorm(sadic_mul(xa, xb));
      if (na.zero_at_depth || nb.zero_at_depth || nab.zero_at_depth) continue;
      CHECK(nab.valuation == na.valuation + nb.valuation);
    }
  }
}

TEST_CASE("valuation split and recombine are inverse") {
  Rng rng(11);
  for (int s : {2, 3, 10}) {
    const int depth = 5;
    const long long mod = pow_ll(s, depth);
    for (int i = 0; i < 100; ++i) {
      long long a = rng.int_in(1, mod - 1);
      SAdicInt x = sadic_from_int(s, depth, a);
      ValuationSplit sp = valuation_split(x);
      REQUIRE_FALSE(sp.is_zero);
      CHECK(sp.unit.digits[0] != 0);
      CHECK(sp.unit.depth() == depth - sp.m);
      SAdicInt back = valuation_recombine(s, depth, sp.m, sp.unit);
      CHECK(sadic_to_residue(back) == a);
    }
    CHECK(valuation_split(sadic_from_int(s, 3, 0)).is_zero);
  }
}

TEST_CASE("unit residues enumerate the invertibles and unit_index inverts them") {
  for (int s : {2, 3, 10}) {
    for (int e = 1; e <= 3; ++e) {
      auto units = unit_residues(s, e);
      CHECK(static_cast<long long>(units.size()) == unit_count(s, e));
      for (size_t i = 0; i < units.size(); ++i) {
        CHECK(units[i] % s != 0);
        CHECK(unit_index(s, units[i]) == static_cast<long long>(i));
      }
      // exactly the residues not divisible by s
      long long seen = 0;
      for (long long r = 1; r < pow_ll(s, e); ++r)
        if (r % s != 0) ++seen;
      CHECK(seen == static_cast<long long>(units.size()));
    }
  }
}

TEST_CASE("sadic validation rejects malformed values") {
  CHECK_THROWS_AS(check_sadic(SAdicInt{2, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(check_sadic(SAdicInt{1, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(check_sadic(SAdicInt{3, {}}), std::invalid_argument);
  SAdicInt a = sadic_from_int(2, 3, 1);
  SAdicInt b = sadic_from_int(2, 4, 1);
  SAdicInt c = sadic_from_int(3, 3, 1);
  CHECK_THROWS_AS(sadic_add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(sadic_mul(a, c), std::invalid_argument);
  CHECK_THROWS_AS(unit_index(2, 4), std::invalid_argument);
}
