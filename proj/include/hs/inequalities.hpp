#pragma once

#include <string>
#include <vector>

#include "hs/analytic.hpp"
#include "hs/norms.hpp"
#include "hs/random_gen.hpp"

namespace hs {

struct HarnessConfig {
  int s = 2;
  unsigned long long seed = 1;
  int count = 100;
  RandomOptions rand;   // symbol/element shapes for the generic families
  int m_cut = 64;       // starting truncation for interval-backed norms
  int m_cut_cap = 1024; // doubling cap when a comparison is inconclusive
  double tol = 1e-9;    // tie tolerance for certified comparisons
  // Constant in the Toeplitz commutation bounds.  The proof gives
  // pi^2/3 - 1; configurable so the harness can demonstrate that weakening
  // it is detected.
  double defect_constant = 2.2899;  // overwritten by default_defect_constant()
};

double default_defect_constant();

struct InequalityReport {
  std::string inequality;
  int instances = 0;
  std::string status;  // "pass" | "fail" | "inconclusive"
  double worst_margin = 0.0;
  unsigned long long seed = 0;
};

// Certifies every estimate in the norm-hierarchy suite on seeded random
// data: the weighted-norm propositions, the M,N-norm propositions, the
// Toeplitz and generalized-Toeplitz product estimates and commutation-defect
// bounds, the weight-commutator binomial identities, the exponential
// estimates, and the expectation contraction.  Inequalities compare a
// certified upper bound of the left side against a certified lower bound of
// the right side (ties up to tol·scale); equalities are checked to relative
// 1e-12.  Inconclusive interval comparisons retry with doubled m_cut.
std::vector<InequalityReport> verify_inequalities(const HarnessConfig& cfg);

bool all_pass(const std::vector<InequalityReport>& reports);

}  // namespace hs
