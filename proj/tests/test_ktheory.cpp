#include <doctest.h>

#include <stdexcept>

#include "hs/analytic.hpp"
#include "hs/ktheory.hpp"
#include "hs/random_gen.hpp"

using namespace hs;
using FElem = Element<Cx>;
using FSym = DiagonalSymbol<Cx>;

TEST_CASE("the range defect of the shift generates rank one everywhere") {
  for (int s : {2, 3}) {
    FElem p = range_defect(s);
    CHECK(p == FElem::diag(FSym::row_indicator(s, 0)));
    for (int depth = 1; depth <= 3; ++depth) {
      K0Class c = k0_class(p, 1e-9, depth);
      CHECK(c.e == depth);
      CHECK(static_cast<long long>(c.values.size()) == unit_count(s, depth));
      for (long long v : c.values) CHECK(v == 1);
    }
  }
}

TEST_CASE("diagonal matrix units at every level share one class") {
  for (int s : {2, 3}) {
    K0Class base = k0_class(matrix_unit<Cx>(s, 0, 0));
    for (int k = 1; k <= 3; ++k) CHECK(k0_class(matrix_unit<Cx>(s, k, k)) == base);
  }
}

TEST_CASE("cylinder projections tabulate their residue supports") {
  // depth-2 cells at base 2: odd residues split, the even cell covers both
  K0Class c1 = k0_class(FElem::diag(FSym::cylinder(2, 2, 1)));
  K0Class c3 = k0_class(FElem::diag(FSym::cylinder(2, 2, 3)));
  K0Class c2 = k0_class(FElem::diag(FSym::cylinder(2, 2, 2)));
  CHECK(c1 == (K0Class{2, 2, {1, 0}}));
  CHECK(c3 == (K0Class{2, 2, {0, 1}}));
  CHECK(c2 == (K0Class{2, 2, {1, 1}}));

  // the three cells sum to the first two levels
  K0Class below = k0_class(FElem::diag(FSym::below_indicator(2, 2)));
  CHECK(c1 + c3 + c2 == below);
  CHECK(below == (K0Class{2, 1, {2}}));
}

TEST_CASE("classes add under orthogonal sums") {
  FElem p = FElem::diag(FSym::cylinder(3, 1, 1));
  FElem q = FElem::diag(FSym::cylinder(3, 1, 2));
  CHECK((p * q).is_zero());
  CHECK(k0_class(p + q) == k0_class(p) + k0_class(q));
  CHECK(k0_class(p + q) == k0_class(range_defect(3)));

  FElem e11 = matrix_unit<Cx>(2, 1, 1);
  FElem e22 = matrix_unit<Cx>(2, 2, 2);
  CHECK(k0_class(e11 + e22) == (K0Class{2, 1, {2}}));
}

TEST_CASE("classes are stable under refinement and scaling") {
  K0Class one = k0_class(matrix_unit<Cx>(2, 0, 0));
  CHECK(one == refined_class(one, 3));
  CHECK(refined_class(one, 3).values == std::vector<long long>(4, 1));
  CHECK(scaled_class(one, 3) == (K0Class{2, 1, {3}}));
  K0Class fine{2, 2, {1, 0}};
  CHECK_THROWS_AS(refined_class(fine, 1), std::invalid_argument);
  CHECK((K0Class{2, 1, {1}}) != (K0Class{3, 1, {1, 1}}));
}

TEST_CASE("classes survive conjugation by series unitaries") {
  Rng rng(509);
  RandomOptions opt;
  opt.depth_d = 2;
  opt.support = 2;
  opt.num_terms = 2;
  for (int s : {2, 3}) {
    FElem raw = self_adjoint_part(random_ideal_element<Cx>(s, rng, opt));
    const double r = n_norm(raw, 0).upper;
    FElem a = r > 0.0 ? scaled(raw, Cx(1.0 / std::max(1.0, r), 0.0)) : raw;
    FElem u = exp_i(a, 1e-12).value;
    for (const FElem& p : {matrix_unit<Cx>(s, 0, 0), FElem::diag(FSym::below_indicator(s, 2))}) {
      FElem q = u * p * u.adjoint();
      REQUIRE(q.in_ideal());
      CHECK(k0_class(q, 1e-6) == k0_class(p));
    }
  }
}

TEST_CASE("degenerate inputs to the class map are rejected") {
  CHECK_THROWS_AS((void)k0_class(FElem::identity(2)), std::domain_error);
  CHECK_THROWS_AS((void)k0_class(FElem::shift(2, 1)), std::domain_error);
  FElem half = scaled(matrix_unit<Cx>(2, 0, 0), Cx(0.5, 0.0));
  CHECK_THROWS_AS((void)k0_class(half), std::domain_error);
}

TEST_CASE("winding numbers of explicit symbols") {
  using TP = TrigPoly<Cx>;
  CHECK(winding_number(TP::mode(1, Cx(1.0, 0.0))) == 1);
  CHECK(winding_number(TP::mode(-1, Cx(0.0, 2.0))) == -1);
  CHECK(winding_number(TP::constant(Cx(2.0, -1.0))) == 0);
  CHECK(winding_number(TP::mode(2, Cx(1.0, 0.0)) + TP::constant(Cx(0.1, 0.0))) == 2);
  CHECK(winding_number(TP::mode(3, Cx(0.0, -1.0)) + TP::mode(1, Cx(0.25, 0.25))) == 3);
}

TEST_CASE("winding is additive on products of invertible symbols") {
  Rng rng(521);
  for (int i = 0; i < 20; ++i) {
    auto dominant = [&rng]() {
      TrigPoly<Cx> out = TrigPoly<Cx>::mode(rng.int_in(-3, 3), Cx(4.0, 0.0));
      for (int j = 0; j < 2; ++j)
        out = out + TrigPoly<Cx>::mode(rng.int_in(-3, 3),
                                       Cx(rng.real_in(-0.5, 0.5), rng.real_in(-0.5, 0.5)));
      return out;
    };
    TrigPoly<Cx> phi = dominant();
    TrigPoly<Cx> psi = dominant();
    CHECK(winding_number(phi * psi) == winding_number(phi) + winding_number(psi));
  }
}

TEST_CASE("symbols that reach zero carry no invertibility certificate") {
  TrigPoly<Cx> touching = TrigPoly<Cx>::constant(Cx(1.0, 0.0)) + TrigPoly<Cx>::mode(1, Cx(1.0, 0.0));
  CHECK_THROWS_AS((void)winding_number(touching), std::domain_error);
  CHECK_THROWS_AS((void)winding_number(TrigPoly<Cx>{}), std::domain_error);
}

TEST_CASE("the index pairing multiplies the defect class by minus the winding") {
  for (int s : {2, 3}) {
    K0Class ones = k0_class(range_defect(s));
    CHECK(index_pairing(s, TrigPoly<Cx>::mode(1, Cx(1.0, 0.0))) == scaled_class(ones, -1));
    CHECK(index_pairing(s, TrigPoly<Cx>::mode(-2, Cx(2.0, 1.0))) == scaled_class(ones, 2));
    CHECK(index_pairing(s, TrigPoly<Cx>::constant(Cx(5.0, 0.0))) == scaled_class(ones, 0));
  }
}
