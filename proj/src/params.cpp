#include "km/params.hpp"

#include <cmath>
#include <cstdio>

namespace km {

double Params::q() const { return std::exp(-alpha * beta); }

double Params::qpow(double s) const { return std::exp(-alpha * beta * s); }

cplx Params::qpow(cplx s) const { return std::exp(-alpha * beta * s); }

double Params::coupling_sum() const { return ((g0 + g1) + g2) + g3; }

RealVec Params::rho() const {
  RealVec r(n);
  const double half_sum = coupling_sum() / 2.0;
  for (int j = 0; j < n; ++j) r[j] = (n - 1 - j) * g + half_sum;
  return r;
}

RealVec Params::rho_dual() const { return dual(*this).rho(); }

AskeyWilsonLetters Params::letters() const {
  return {qpow(g), qpow(g0), -qpow(g1), qpow(g2 + 0.5), -qpow(g3 + 0.5)};
}

std::string Params::digest() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "n=%d alpha=%.17g beta=%.17g g=%.17g g0=%.17g g1=%.17g g2=%.17g g3=%.17g",
                n, alpha, beta, g, g0, g1, g2, g3);
  return buf;
}

Params make_params(int n, double alpha, double beta, double g, double g0, double g1,
                   double g2, double g3) {
  if (n < 1) throw InvalidParameterError("make_params: n must be >= 1");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidParameterError("make_params: alpha and beta must be positive");
  return Params{n, alpha, beta, g, g0, g1, g2, g3};
}

DualParams dual(const Params& p) {
  DualParams d = p;
  d.alpha = p.beta;
  d.beta = p.alpha;
  d.g = p.g;
  // Summation order: accumulate g1..g3 first so that inputs constructed on
  // the self-dual hyperplane (g0 = g1+g2+g3, left to right) map to themselves
  // without extra rounding in the first row.
  d.g0 = (((p.g1 + p.g2) + p.g3) + p.g0) / 2.0;
  d.g1 = (((p.g1 - p.g2) - p.g3) + p.g0) / 2.0;
  d.g2 = (((p.g2 - p.g1) - p.g3) + p.g0) / 2.0;
  d.g3 = (((p.g3 - p.g1) - p.g2) + p.g0) / 2.0;
  return d;
}

bool is_self_dual(const Params& p) { return p.g0 == p.g1 + p.g2 + p.g3; }

}  // namespace km
