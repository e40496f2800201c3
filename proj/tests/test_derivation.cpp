#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "hs/blocks.hpp"
#include "hs/derivation.hpp"
#include "hs/random_gen.hpp"
#include "oracles.hpp"

using namespace hs;
using GR = GaussianRational;
using XElem = Element<GR>;
using XSym = DiagonalSymbol<GR>;
using FElem = Element<Cx>;
using FSym = DiagonalSymbol<Cx>;

namespace {

// Level-independent multi-mode symbol with no invariant mode and zero unit
// average in every mode: the shape the decomposition can isolate.
LambdaSymbol<Cx> normalized_lambda(int s, Rng& rng, int max_modes) {
  RandomOptions flat;
  flat.depth_d = 0;
  flat.depth_e = 2;
  LambdaSymbol<Cx> out(s);
  const int count = rng.int_in(1, max_modes);
  for (int j = 0; j < count; ++j) {
    int n = rng.int_in(1, 3) * (rng.coin() ? 1 : -1);
    FSym f = random_symbol<Cx>(s, rng, flat);
    FSym centered = f - FSym::constant(s, e1_average(f));
    if (!centered.is_zero()) out.set(n, centered);
  }
  return out;
}

double lambda_sup_diff(const LambdaSymbol<Cx>& a, const LambdaSymbol<Cx>& b) {
  double worst = 0.0;
  auto scan = [&](const std::map<int, FSym>& modes) {
    for (const auto& kv : modes) {
      FSym diff = a.mode(kv.first) - b.mode(kv.first);
      const int e = diff.xdepth();
      for (long long u : unit_residues(diff.base(), e))
        worst = std::max(worst, std::abs(diff.value_at(0, u, e)));
    }
  };
  scan(a.modes);
  scan(b.modes);
  return worst;
}

}  // namespace

TEST_CASE("boundary derivation matches the unbounded commutator oracle") {
  Rng rng(401);
  RandomOptions opt;
  for (int s : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      TrigPoly<Cx> phi = random_trig_poly<Cx>(rng, opt);
      FElem a = random_element<Cx>(s, rng, opt, /*ideal=*/(i % 2) == 0);
      Derivation<Cx> d = Derivation<Cx>::d_phi(s, phi);
      FElem da = d.apply(a);

      const int e = std::max(fiber_depth(a), fiber_depth(da));
      const int m = exact_window(a) + phi.degree() + 4;
      Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, m);
      for (const auto& [k, c] : phi.coeffs()) {
        if (k >= 0) {
          for (int col = 0; col + k < m; ++col) w(col + k, col) += c * static_cast<double>(col);
        } else {
          for (int col = -k; col < m; ++col) w(col + k, col) += c * static_cast<double>(col + k);
        }
      }
      auto ablocks = oracle::dense_blocks(a, e, m);
      auto dblocks = oracle::dense_blocks(da, e, m);
      // only the interior is truncation-exact once boundary tails are present
      const int mm = m - phi.degree() - opt.support - 1;
      for (std::size_t u = 0; u < ablocks.size(); ++u) {
        Eigen::MatrixXcd want = w * ablocks[u] - ablocks[u] * w;
        CHECK((dblocks[u] - want).topLeftCorner(mm, mm).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("boundary derivation twists the generators by Toeplitz factors") {
  TrigPoly<GR> phi;
  phi.set(2, GR(mpq_class(3, 2), mpq_class(1, 2)));
  phi.set(0, GR(mpq_class(1), mpq_class(0)));
  phi.set(-1, GR(mpq_class(-2), mpq_class(0)));
  for (int s : {2, 3}) {
    Derivation<GR> d = Derivation<GR>::d_phi(s, phi);
    XElem v = XElem::shift(s, 1);
    XElem vstar = XElem::shift(s, -1);
    CHECK(d.apply(v) == v * toeplitz(s, phi));
    CHECK(d.apply(vstar) == -(toeplitz(s, phi) * vstar));
    CHECK(d.apply(XElem::identity(s)).is_zero());
  }
}

TEST_CASE("structured derivations obey the Leibniz rule exactly") {
  Rng rng(409);
  RandomOptions opt;
  opt.support = 3;
  for (int i = 0; i < 10; ++i) {
    const int s = (i % 2) ? 3 : 2;
    Derivation<GR> dphi = Derivation<GR>::d_phi(s, random_trig_poly<GR>(rng, opt));
    Derivation<GR> dlam = Derivation<GR>::d_lambda(random_lambda_symbol<GR>(s, rng, opt));
    Derivation<GR> dinn = Derivation<GR>::d_inner(random_element<GR>(s, rng, opt));
    XElem a = random_element<GR>(s, rng, opt);
    XElem b = random_element<GR>(s, rng, opt);
    for (const Derivation<GR>& d : {dphi, dlam, dinn, dphi + dlam + dinn}) {
      CHECK(d.apply(a * b) == d.apply(a) * b + a * d.apply(b));
    }
  }
}

TEST_CASE("quotient of a boundary image is the scaled mode derivative") {
  Rng rng(419);
  RandomOptions opt;
  for (int i = 0; i < 15; ++i) {
    const int s = (i % 2) ? 3 : 2;
    TrigPoly<GR> phi = random_trig_poly<GR>(rng, opt);
    XElem a = random_element<GR>(s, rng, opt);
    XElem da = Derivation<GR>::d_phi(s, phi).apply(a);
    CHECK(quotient_symbol(da) == phi * quotient_symbol(a).derivative());
  }
}

TEST_CASE("theta-independent multi-mode symbols act trivially") {
  Rng rng(421);
  RandomOptions flat;
  flat.depth_d = 0;
  for (int s : {2, 3}) {
    LambdaSymbol<GR> lam(s);
    lam.set(0, random_symbol<GR>(s, rng, flat));
    REQUIRE(lam.theta_independent());
    Derivation<GR> d = Derivation<GR>::d_lambda(lam);
    CHECK(d.apply(XElem::shift(s, 1)).is_zero());
    CHECK(d.apply(XElem::shift(s, -1)).is_zero());
    RandomOptions opt;
    CHECK(d.apply(random_element<GR>(s, rng, opt)).is_zero());

    // one oscillating mode already moves the shift pair
    LambdaSymbol<GR> osc(s);
    osc.set(1, XSym::constant(s, GR(mpq_class(1), mpq_class(0))));
    CHECK_FALSE(osc.theta_independent());
    CHECK_FALSE(Derivation<GR>::d_lambda(osc).apply(XElem::shift(s, -1)).is_zero());
  }
}

TEST_CASE("fourier components partition a structured derivation") {
  Rng rng(431);
  RandomOptions opt;
  opt.support = 3;
  const int s = 2;
  Derivation<GR> d = Derivation<GR>::d_phi(s, random_trig_poly<GR>(rng, opt)) +
                     Derivation<GR>::d_lambda(random_lambda_symbol<GR>(s, rng, opt)) +
                     Derivation<GR>::d_inner(random_element<GR>(s, rng, opt));
  const std::vector<int> support = fourier_support(d);
  CHECK(std::is_sorted(support.begin(), support.end()));
  for (int i = 0; i < 5; ++i) {
    XElem x = random_element<GR>(s, rng, opt);
    XElem sum = XElem::zero(s);
    for (int n : support) sum = sum + fourier_component_of_derivation(d, n, x);
    CHECK(sum == d.apply(x));
    // modes outside the support act as zero
    const int outside = support.empty() ? 7 : support.back() + 1;
    CHECK(fourier_component_of_derivation(d, outside, x).is_zero());
  }
}

TEST_CASE("covariant recursion solves the single-mode commutator equation") {
  // indicator of level 0 scaled by g: constant solution -g
  const GR g(mpq_class(5, 2), mpq_class(-1, 2));
  auto [R0, r0] = covariant_solve(1, scaled(XSym::row_indicator(2, 0), g));
  CHECK(R0.is_zero());
  CHECK(r0 == XSym::constant(2, -g));

  // indicator of level 1: boundary value -1 plus a level-0 bump
  auto [R1, r1] = covariant_solve(2, XSym::row_indicator(2, 1));
  CHECK(r1 == XSym::constant(2, GR(mpq_class(-1), mpq_class(0))));
  CHECK(R1 == XSym::row_indicator(2, 0));

  Rng rng(433);
  RandomOptions opt;
  opt.zero_tail = true;
  for (int i = 0; i < 15; ++i) {
    const int s = (i % 2) ? 3 : 2;
    RandomOptions sopt = opt;
    XSym G = random_symbol<GR>(s, rng, sopt);
    const int n = (i % 4) + 1;
    auto [R, r] = covariant_solve(n, G);
    CHECK(R.zero_tail());
    CHECK(r.mdepth() == 0);
    XSym H = R + r;
    // pointwise: H(m-1) on levels >= 1, minus H(m), reproduces G
    const int e = std::max(H.xdepth(), G.xdepth());
    for (long long u : unit_residues(s, e)) {
      for (int m = 0; m <= G.mdepth() + 2; ++m) {
        GR lhs = m >= 1 ? H.value_at(m - 1, u, e) : GR();
        lhs = lhs - H.value_at(m, u, e);
        CHECK(lhs == G.value_at(m, u, e));
      }
    }
    // as elements: the commutator against the adjoint shift drops one mode
    CHECK(commutator(XElem::term(n, H), XElem::shift(s, -1)) == XElem::term(n - 1, G));
    // and the mirrored mode satisfies the mirrored equation
    CHECK(commutator(XElem::term(-n, H), XElem::shift(s, 1)) == XElem::term(-n + 1, negated(G)));
  }
}

TEST_CASE("invariant recursion integrates level differences") {
  CHECK(invariant_solve(XSym::row_indicator(2, 1)) == negated(XSym::below_indicator(2, 2)));

  Rng rng(439);
  RandomOptions opt;
  opt.zero_tail = true;
  for (int i = 0; i < 15; ++i) {
    const int s = (i % 2) ? 3 : 2;
    XSym F = random_symbol<GR>(s, rng, opt);
    XSym R = invariant_solve(F);
    CHECK(R.zero_tail());
    const int e = std::max(R.xdepth(), F.xdepth());
    for (long long u : unit_residues(s, e))
      for (int m = 0; m <= F.mdepth() + 2; ++m)
        CHECK(R.value_at(m + 1, u, e) - R.value_at(m, u, e) == F.value_at(m, u, e));
    CHECK(commutator(XElem::diag(R), XElem::shift(s, 1)) == XElem::term(1, F));
  }
}

TEST_CASE("recursions reject malformed right-hand sides") {
  XSym tailed = XSym::constant(2, GR(mpq_class(1), mpq_class(0)));
  CHECK_THROWS_AS((void)covariant_solve(0, XSym::row_indicator(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS((void)covariant_solve(1, tailed), std::domain_error);
  CHECK_THROWS_AS((void)invariant_solve(tailed), std::domain_error);
}

TEST_CASE("generator image tables reproduce structured derivations") {
  Rng rng(443);
  RandomOptions opt;
  opt.support = 2;
  const int s = 2, e = 4;
  Derivation<GR> d = Derivation<GR>::d_phi(s, random_trig_poly<GR>(rng, opt)) +
                     Derivation<GR>::d_lambda(random_lambda_symbol<GR>(s, rng, opt)) +
                     Derivation<GR>::d_inner(random_element<GR>(s, rng, opt));
  GeneratorImages<GR> gi;
  gi.s = s;
  gi.e = e;
  gi.dV = d.apply(XElem::shift(s, 1));
  gi.dVstar = d.apply(XElem::shift(s, -1));
  for (long long r = 0; r < pow_ll(s, e); ++r)
    gi.dM.push_back(d.apply(XElem::diag(XSym::cylinder(s, e, r))));
  Derivation<GR> di = Derivation<GR>::d_images(gi);
  for (int i = 0; i < 3; ++i) {
    XElem x = random_element<GR>(s, rng, opt);
    CHECK(di.apply(x) == d.apply(x));
  }

  // a coefficient finer than the table is rejected with advice to refine
  GeneratorImages<GR> shallow = gi;
  shallow.e = 1;
  shallow.dM = {d.apply(XElem::diag(XSym::cylinder(s, 1, 0))),
                d.apply(XElem::diag(XSym::cylinder(s, 1, 1)))};
  Derivation<GR> ds = Derivation<GR>::d_images(shallow);
  CHECK_THROWS_AS((void)ds.apply(XElem::diag(XSym::cylinder(s, 2, 3))), std::domain_error);
}

TEST_CASE("generator image tables are validated") {
  const int s = 2;
  GeneratorImages<GR> gi;
  gi.s = s;
  gi.e = 1;
  gi.dM.resize(1, XElem::zero(s));  // wrong table size for the depth
  CHECK_THROWS_AS(check_generator_images(gi), std::invalid_argument);

  gi.dM.assign(2, XElem::zero(s));
  gi.dV = XElem::shift(s, 1);
  gi.dVstar = XElem::shift(s, 1);  // breaks the isometry relation
  CHECK_THROWS_AS(check_generator_images(gi), std::domain_error);

  gi.dV = XElem::zero(s);
  gi.dVstar = XElem::zero(s);
  gi.dM[0] = XElem::identity(s);  // breaks the idempotent rule
  CHECK_THROWS_AS(check_generator_images(gi), std::domain_error);

  gi.dM[0] = XElem::zero(s);
  CHECK_NOTHROW(check_generator_images(gi));
}

TEST_CASE("decompose recovers the structured parts it was built from") {
  Rng rng(449);
  RandomOptions opt;
  opt.support = 3;
  for (int i = 0; i < 12; ++i) {
    const int s = (i % 2) ? 3 : 2;
    TrigPoly<Cx> phi = (i % 4 == 1 || i % 4 == 3) ? random_trig_poly<Cx>(rng, opt) : TrigPoly<Cx>{};
    LambdaSymbol<Cx> lam =
        (i % 4 == 2 || i % 4 == 3) ? normalized_lambda(s, rng, 3) : LambdaSymbol<Cx>(s);
    FElem w = random_ideal_element<Cx>(s, rng, opt);
    Derivation<Cx> d = Derivation<Cx>::d_phi(s, phi) + Derivation<Cx>::d_lambda(lam) +
                       Derivation<Cx>::d_inner(w);

    Decomposition<Cx> dec = decompose(d, 1e-9);
    CHECK(dec.phi == phi);
    CHECK(lambda_sup_diff(dec.lambda, lam) <= 1e-9);
    CHECK(dec.residual.upper <= 1e-9);
    CHECK(max_coeff_diff(dec.inner_generator, w) <= 1e-12);
    if (s == 2) CHECK(dec.inner_generator == w);
    CHECK(is_inner_certificate(dec) == (phi.is_zero() && lam.is_zero()));

    FElem x = random_element<Cx>(s, rng, opt);
    CHECK(max_coeff_diff(as_derivation(dec).apply(x), d.apply(x)) <= 1e-12);
  }
}

TEST_CASE("decompose certifies inner derivations and absorbs constant modes") {
  Rng rng(457);
  RandomOptions opt;

  // purely inner: certificate holds, generator matches
  FElem w = random_ideal_element<Cx>(2, rng, opt);
  Decomposition<Cx> di = decompose(Derivation<Cx>::d_inner(w));
  CHECK(is_inner_certificate(di));
  CHECK(di.inner_generator == w);

  // x-independent multi-mode symbol: its commutator is a Toeplitz inner part
  LambdaSymbol<Cx> lam(2);
  lam.set(1, FSym::constant(2, Cx(0.75, 0.0)));
  lam.set(-2, FSym::constant(2, Cx(0.0, -1.5)));
  Decomposition<Cx> dc = decompose(Derivation<Cx>::d_lambda(lam));
  CHECK(is_inner_certificate(dc));
  CHECK(dc.lambda.is_zero());
  TrigPoly<Cx> psi = TrigPoly<Cx>::mode(1, Cx(0.75, 0.0)) + TrigPoly<Cx>::mode(-2, Cx(0.0, -1.5));
  CHECK(dc.inner_generator == toeplitz(2, psi));

  // purely boundary: no inner remainder at all
  TrigPoly<Cx> phi = TrigPoly<Cx>::mode(2, Cx(0.5, 0.5)) + TrigPoly<Cx>::mode(-1, Cx(1.0, 0.0));
  Decomposition<Cx> db = decompose(Derivation<Cx>::d_phi(2, phi));
  CHECK(db.phi == phi);
  CHECK(db.inner_generator.is_zero());
  CHECK(db.lambda.is_zero());
  CHECK_FALSE(is_inner_certificate(db));
}

TEST_CASE("decompose rejects maps whose shift image leaves the algebra") {
  // a consistent image table whose dV has oscillating boundary values
  const int s = 2, e = 2;
  FSym bad(s, e, {}, {Cx(1.0, 0.0), Cx(-0.5, 0.0)});
  FElem dv = FElem::term(1, bad);
  FElem vstar = FElem::shift(s, -1);
  GeneratorImages<Cx> gi;
  gi.s = s;
  gi.e = e;
  gi.dV = dv;
  gi.dVstar = -(vstar * dv * vstar);
  gi.dM.assign(4, FElem::zero(s));
  Derivation<Cx> d = Derivation<Cx>::d_images(gi);
  CHECK_THROWS_AS((void)decompose(d), std::domain_error);
}
