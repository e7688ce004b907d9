#pragma once

#include <string>

#include "km/common.hpp"

namespace km {

/// Askey-Wilson letters derived from the exponent couplings:
/// t = q^g, a = q^{g0}, b = -q^{g1}, c = q^{g2+1/2}, d = -q^{g3+1/2}.
struct AskeyWilsonLetters {
  double t, a, b, c, d;
};

/// Coupling parameters.  The exponents (g, g0..g3) are the stored state;
/// the letters (t, a, b, c, d), the base q and the shifted half-sums rho
/// are derived views.
struct Params {
  int n = 1;
  double alpha = 1.0;
  double beta = 1.0;
  double g = 0.0;
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  double q() const;              // exp(-alpha*beta), in (0,1)
  double qpow(double s) const;   // q^s computed as exp(-alpha*beta*s)
  cplx qpow(cplx s) const;       // principal branch
  double coupling_sum() const;   // g0+g1+g2+g3, fixed evaluation order
  RealVec rho() const;           // rho_j = (n-j) g + coupling_sum()/2
  RealVec rho_dual() const;      // rho of dual(*this)
  AskeyWilsonLetters letters() const;
  std::string digest() const;    // human-readable reproducibility key

  bool operator==(const Params&) const = default;
};

/// Dual parameters share the layout of Params (alpha and beta swapped,
/// couplings mixed by the half-Hadamard matrix).
using DualParams = Params;

/// Validates alpha, beta > 0 and n >= 1; throws InvalidParameterError otherwise.
Params make_params(int n, double alpha, double beta, double g, double g0, double g1,
                   double g2, double g3);

/// The involutive reparametrization: swaps alpha/beta, keeps g, and maps
/// (g0,g1,g2,g3) by (1/2)[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]].
DualParams dual(const Params& p);

/// Exact test of the hyperplane g0 = g1 + g2 + g3 (evaluated left to right).
/// Callers are expected to construct self-dual inputs the same way.
bool is_self_dual(const Params& p);

}  // namespace km
