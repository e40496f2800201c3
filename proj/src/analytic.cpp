#include "hs/analytic.hpp"

#include <cmath>

namespace hs {

namespace {

// sum_{k > K} rho^k / k! * extra(k), summed until the terms stop mattering.
template <class Extra>
double series_tail(double rho, int K, Extra extra) {
  double total = 0.0;
  double p = 1.0;  // rho^k / k!
  for (int k = 1; k <= K; ++k) p *= rho / k;
  for (int k = K + 1; k < K + 400; ++k) {
    p *= rho / k;
    double t = p * extra(k);
    total += t;
    if (t < 1e-18 * (total + 1e-300) && k > K + 4) break;
  }
  return total;
}

}  // namespace

double exp_tail_mn(double rho, int window, int K, int M, int N) {
  return series_tail(rho, K, [&](int k) {
    return std::pow(1.0 + k * window, N) * std::pow(1.0 + 2.0 * k * window, M);
  });
}

double exp_tail_partialj(double rho, int window, int K, int j, int N) {
  return series_tail(rho, K, [&](int k) {
    return 2.0 * std::pow(1.0 + k * window, N + j);
  });
}

ExpResult exp_i(const Element<Cx>& a, double tol, const NormOptions& opt) {
  ExpResult out{Element<Cx>::identity(a.base()), 0, 0.0, 1};
  out.rho = n_norm(a, 0, opt).upper;
  out.window = std::max(1, exact_window(a));
  if (out.rho == 0.0) return out;

  // smallest K with plain-norm series tail below tol
  int K = 1;
  while (series_tail(out.rho, K, [](int) { return 1.0; }) > tol && K < 300) ++K;
  out.K = K;

  const Element<Cx> ia = scaled(a, Cx(0.0, 1.0));
  const Element<Cx> ident = Element<Cx>::identity(a.base());
  Element<Cx> acc = ident;
  for (int k = K; k >= 1; --k)
    acc = ident + scaled(Element<Cx>::mul(ia, acc, nullptr), Cx(1.0 / k, 0.0));
  out.value = acc;
  return out;
}

NeumannResult neumann_inverse_defect(const Element<Cx>& c, double tol,
                                     const NormOptions& opt) {
  if (!c.in_ideal()) throw std::domain_error("neumann_inverse_defect: ideal-type input required");
  NeumannResult out{Element<Cx>::zero(c.base()), Element<Cx>::zero(c.base()), 0, 0.0};
  out.rho = n_norm(c, 0, opt).upper;
  if (out.rho >= 1.0)
    throw std::domain_error("neumann_inverse_defect: norm bound must be below one");
  if (out.rho > 0.0) {
    int K = 1;
    while (std::pow(out.rho, K + 1) / (1.0 - out.rho) > tol && K < 400) ++K;
    out.K = K;
    // d_K = sum_{j=1..K} (-c)^j via d <- -c (I + d)
    const Element<Cx> ident = Element<Cx>::identity(c.base());
    Element<Cx> d = -c;
    for (int k = 2; k <= K; ++k) d = -Element<Cx>::mul(c, ident + d, nullptr);
    out.correction = d;
  }
  const Element<Cx> ident = Element<Cx>::identity(c.base());
  out.defect = (ident + out.correction) * (ident + c) - ident;
  return out;
}

}  // namespace hs
