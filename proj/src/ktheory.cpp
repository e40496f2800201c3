#include "hs/ktheory.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hs/blocks.hpp"

namespace hs {

K0Class refined_class(const K0Class& c, int e) {
  if (e < c.e) throw std::invalid_argument("refined_class: cannot coarsen a class");
  if (e == c.e) return c;
  const auto fine = unit_residues(c.s, e);
  const long long mod = pow_ll(c.s, c.e);
  K0Class out{c.s, e, {}};
  out.values.reserve(fine.size());
  for (long long r : fine) out.values.push_back(c.values[static_cast<size_t>(unit_index(c.s, r % mod))]);
  return out;
}

K0Class scaled_class(const K0Class& c, long long k) {
  K0Class out = c;
  for (auto& v : out.values) v *= k;
  return out;
}

K0Class operator+(const K0Class& a, const K0Class& b) {
  if (a.s != b.s) throw std::invalid_argument("K0Class: mixed bases");
  const int e = std::max(a.e, b.e);
  K0Class x = refined_class(a, e);
  const K0Class y = refined_class(b, e);
  for (size_t i = 0; i < x.values.size(); ++i) x.values[i] += y.values[i];
  return x;
}

bool operator==(const K0Class& a, const K0Class& b) {
  if (a.s != b.s) return false;
  const int e = std::max(a.e, b.e);
  return refined_class(a, e).values == refined_class(b, e).values;
}

K0Class k0_class(const Element<Cx>& p, double tol, int depth, const NormOptions& opt) {
  if (!p.in_ideal())
    throw std::domain_error("k0_class: element has nonzero boundary values, so it does not lie in the ideal");
  const NormValue idem = n_norm(p * p - p, 0, opt);
  const NormValue herm = n_norm(p.adjoint() - p, 0, opt);
  if (!(idem.upper <= tol) || !(herm.upper <= tol)) {
    std::ostringstream msg;
    msg << "k0_class: not a projection within tolerance (idempotent defect " << idem.upper
        << ", self-adjoint defect " << herm.upper << ", tol " << tol << ")";
    throw std::domain_error(msg.str());
  }
  const int e = depth > 0 ? depth : fiber_depth(p);
  const int window = exact_window(p);
  const BlockMatrixRep rep = to_blocks(p, e, window);
  K0Class out{p.base(), e, {}};
  out.values.reserve(rep.blocks.size());
  for (const auto& block : rep.blocks) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    long long rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 0.5) ++rank;
    out.values.push_back(rank);
  }
  return out;
}

long long winding_number(const TrigPoly<Cx>& phi, double tol) {
  // Lipschitz bound for the sampled curve: |phi'| <= 2 pi sum |n phi_n|.
  double lip = 0.0;
  int degree = 0;
  for (const auto& kv : phi.coeffs()) {
    lip += 2.0 * std::numbers::pi * std::abs(kv.first) * std::abs(kv.second);
    degree = std::max(degree, std::abs(kv.first));
  }
  int K = std::max(256, 16 * (degree + 1));
  const int kmax = 1 << 20;
  for (;; K *= 2) {
    double minabs = std::numeric_limits<double>::infinity();
    double total = 0.0;
    double maxstep = 0.0;
    Cx prev = eval(phi, 0.0);
    for (int k = 1; k <= K; ++k) {
      const Cx z = eval(phi, double(k) / K);
      minabs = std::min(minabs, std::abs(prev));
      const double step = std::arg(z / prev);
      maxstep = std::max(maxstep, std::abs(step));
      total += step;
      prev = z;
    }
    // The sampled minimum certifies nonvanishing once it dominates how far
    // the curve can move between samples.
    const bool certified = minabs > lip / (2.0 * K) + tol && maxstep < std::numbers::pi / 2.0;
    if (certified) {
      const double w = total / (2.0 * std::numbers::pi);
      const long long rounded = std::llround(w);
      if (std::abs(w - double(rounded)) >= 0.1)
        throw std::domain_error("winding_number: sampled argument increments do not close up to an integer");
      return rounded;
    }
    if (2 * K > kmax)
      throw std::domain_error("winding_number: symbol values not bounded away from zero, no invertibility certificate");
  }
}

Element<Cx> range_defect(int s) {
  return Element<Cx>::identity(s) - Element<Cx>::shift(s, 1) * Element<Cx>::shift(s, -1);
}

K0Class index_pairing(int s, const TrigPoly<Cx>& phi, double tol) {
  const long long w = winding_number(phi, tol);
  return scaled_class(k0_class(range_defect(s), tol), -w);
}

}  // namespace hs
