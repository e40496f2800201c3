#include <doctest.h>

#include <numbers>

#include "hs/analytic.hpp"
#include "hs/blocks.hpp"
#include "hs/random_gen.hpp"
#include "oracles.hpp"

using namespace hs;
using FElem = Element<Cx>;

TEST_CASE("exponential of a scaled rank-one projection has its closed form") {
  FElem e00 = matrix_unit<Cx>(2, 0, 0);
  ExpResult res = exp_i(scaled(e00, Cx(std::numbers::pi, 0.0)), 1e-14);
  // e^{i pi p} = 1 - 2p on a projection p
  FElem want = FElem::identity(2) - scaled(e00, Cx(2.0, 0.0));
  CHECK(max_coeff_diff(res.value, want) <= 1e-12);
  CHECK(res.rho > 3.0);
  CHECK(res.window >= 1);
}

TEST_CASE("exponential of zero is the identity") {
  ExpResult res = exp_i(FElem::zero(3), 1e-12);
  CHECK(max_coeff_diff(res.value, FElem::identity(3)) == 0.0);
}

TEST_CASE("series exponential matches the dense spectral oracle and is unitary") {
  Rng rng(307);
  RandomOptions opt;
  const double tol = 1e-12;
  for (int s : {2, 3}) {
    for (int i = 0; i < 12; ++i) {
      FElem raw = self_adjoint_part(random_ideal_element<Cx>(s, rng, opt));
      const double r = n_norm(raw, 0).upper;
      if (r == 0.0) continue;
      FElem a = scaled(raw, Cx(1.2 / std::max(1.0, r), 0.0));
      ExpResult res = exp_i(a, tol);

      const int e = fiber_depth(a);
      const int m = exact_window(a) + 2;
      CHECK(oracle::max_entry_diff(oracle::dense_blocks(res.value, e, m),
                                   oracle::dense_exp_i(a, e, m)) <= 1e-11);

      FElem defect = res.value * res.value.adjoint() - FElem::identity(s);
      REQUIRE(defect.in_ideal());
      CHECK(n_norm(defect, 0).upper <= 1e-11);
    }
  }
}

TEST_CASE("exponential tail bounds shrink in the order and grow in the weights") {
  for (double rho : {0.5, 1.0, 2.0}) {
    for (int w : {1, 3}) {
      CHECK(exp_tail_mn(rho, w, 12, 0, 0) < exp_tail_mn(rho, w, 6, 0, 0));
      CHECK(exp_tail_mn(rho, w, 8, 2, 1) >= exp_tail_mn(rho, w, 8, 0, 0));
      CHECK(exp_tail_partialj(rho, w, 12, 1, 1) < exp_tail_partialj(rho, w, 6, 1, 1));
    }
  }
  // beyond order 60 the factorial has crushed every polynomial weight
  CHECK(exp_tail_mn(1.0, 1, 60, 2, 2) < 1e-50);
  CHECK(exp_tail_partialj(1.0, 1, 60, 3, 2) < 1e-50);
  // the plain tail is dominated by the full remainder of e^rho
  double partial = 0.0, term = 1.0;
  for (int k = 0; k <= 10; ++k) {
    partial += term;
    term *= 0.5 / (k + 1);
  }
  CHECK(exp_tail_mn(0.5, 1, 10, 0, 0) <= doctest::Approx(std::exp(0.5) - partial).epsilon(1e-9));
}

TEST_CASE("Neumann inverse of a scaled projection has its closed form") {
  const double t = 0.3;
  FElem c = scaled(matrix_unit<Cx>(2, 0, 0), Cx(t, 0.0));
  NeumannResult res = neumann_inverse_defect(c, 1e-12);
  FElem want = scaled(matrix_unit<Cx>(2, 0, 0), Cx(-t / (1.0 + t), 0.0));
  CHECK(max_coeff_diff(res.correction, want) <= 5e-12);
  CHECK(n_norm(res.defect, 0).upper <= 1e-11);
  CHECK(res.rho < 0.31);
}

TEST_CASE("Neumann correction matches the dense inverse on random contractions") {
  Rng rng(311);
  RandomOptions opt;
  for (int i = 0; i < 20; ++i) {
    const int s = (i % 2) ? 3 : 2;
    FElem raw = random_ideal_element<Cx>(s, rng, opt);
    const double r = n_norm(raw, 0).upper;
    if (r == 0.0) continue;
    FElem c = scaled(raw, Cx(0.4 / r, 0.0));
    NeumannResult res = neumann_inverse_defect(c, 1e-10);
    CHECK(res.correction.in_ideal());
    CHECK(res.defect.in_ideal());
    CHECK(n_norm(res.defect, 0).upper <= 1e-10);

    const int e = fiber_depth(c);
    const int m = exact_window(c) + 2;
    auto blocks = oracle::dense_blocks(c, e, m);
    for (std::size_t u = 0; u < blocks.size(); ++u) {
      Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
      blocks[u] = (id + blocks[u]).inverse() - id;
    }
    CHECK(oracle::max_entry_diff(oracle::dense_blocks(res.correction, e, m), blocks) <= 1e-9);
  }
}

TEST_CASE("Neumann inversion rejects bad inputs") {
  CHECK_THROWS_AS((void)neumann_inverse_defect(FElem::shift(2, 1), 1e-9), std::domain_error);
  FElem big = scaled(matrix_unit<Cx>(2, 0, 0), Cx(1.2, 0.0));
  CHECK_THROWS_AS((void)neumann_inverse_defect(big, 1e-9), std::domain_error);
}
