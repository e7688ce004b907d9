#pragma once

#include <initializer_list>

#include "km/common.hpp"
#include "km/params.hpp"

namespace km {

struct QPochConfig {
  double truncation_eps = 1e-15;  // tail cutoff |a q^L| below which the product stops
  int max_terms = 4096;
};

/// Non-fatal evaluation diagnostics, propagated by the weight functions.
struct EvalFlags {
  bool truncated = false;  // a q-product hit max_terms before the tail cutoff
};

/// (a;q)_infinity as a finite product up to the tail cutoff.
/// Throws InvalidParameterError unless 0 < q < 1.
cplx qpoch(cplx a, double q, const QPochConfig& cfg = {}, EvalFlags* flags = nullptr);
double qpoch(double a, double q, const QPochConfig& cfg = {}, EvalFlags* flags = nullptr);

/// Multi-argument convenience form: (a_1,...,a_k;q)_infinity.
cplx qpoch(std::initializer_list<cplx> as, double q, const QPochConfig& cfg = {},
           EvalFlags* flags = nullptr);

/// Pair factor of the weight as a function of u = exp(-alpha z):
/// (u;q)/(t u;q) with t = q^g.  Identically 1 when g = 0.
cplx weight_dv(cplx u, const Params& p, const QPochConfig& cfg = {}, EvalFlags* flags = nullptr);

/// Single-coordinate factor of the weight as a function of u = exp(-alpha z):
/// (u,-u,sqrt(q) u,-sqrt(q) u;q) / (a u, b u, c u, d u;q) with the
/// Askey-Wilson letters; each letter pair drops out when its coupling is 0.
cplx weight_dw(cplx u, const Params& p, const QPochConfig& cfg = {}, EvalFlags* flags = nullptr);

/// The orthogonality weight at a generic complex point
/// (integration paths pass x = i*theta).
cplx weight_delta(const ComplexVec& x, const Params& p, const QPochConfig& cfg = {},
                  EvalFlags* flags = nullptr);

/// Half weight whose e_{1..r} shift quotients are the dual shift coefficients;
/// its ratios give the principal specialization of the polynomials.
/// Uses the dual couplings internally.
double half_weight_tilde(const RealVec& y, const Params& p, const QPochConfig& cfg = {},
                         EvalFlags* flags = nullptr);

/// Companion half weight (dual couplings negated, argument shifted by one)
/// entering the quadratic norm formula.
double half_weight_hat(const RealVec& y, const Params& p, const QPochConfig& cfg = {},
                       EvalFlags* flags = nullptr);

/// Single-letter factors of the half weights, exposed for the shift-relation
/// tests: tilde_dv/tilde_dw satisfy f(z+1) = vtilde(z) f(z) etc.
double tilde_dv(double z, const Params& p, const QPochConfig& cfg = {}, EvalFlags* = nullptr);
double tilde_dw(double z, const Params& p, const QPochConfig& cfg = {}, EvalFlags* = nullptr);
double hat_dv(double z, const Params& p, const QPochConfig& cfg = {}, EvalFlags* = nullptr);
double hat_dw(double z, const Params& p, const QPochConfig& cfg = {}, EvalFlags* = nullptr);

/// Scale/coupling data of the sh/ch coefficient family.  The plain kernel has
/// sinh scale alpha/2, couplings beta*g_r and shift step beta; the dual kernel
/// has scale alpha*beta/2, dual couplings and shift step 1.
struct VWKernel {
  double c;                    // sinh/cosh scale
  double G;                    // pair coupling
  double G0, G1, G2, G3;       // single-coordinate couplings
  double h;                    // half shift inside the w factors
  double s;                    // pair shift step
};
VWKernel plain_kernel(const Params& p);
VWKernel dual_kernel(const Params& p);

/// v(z) = sh(c(G+z))/sh(c z); identically 1 for G = 0.
cplx vfun(const VWKernel& k, cplx z);
/// w(z): the four-factor sh/ch product with half-shifted third and fourth factors.
cplx wfun(const VWKernel& k, cplx z);

/// v(z) v(z+s) evaluated jointly, with the removable 0/0 at z = -s, G = s
/// (and its mirror) cancelled structurally.
cplx v_pair_shift(const VWKernel& k, cplx z);
/// v(z) v(-z-s) evaluated jointly with the same cancellation handling.
cplx v_pair_reflect(const VWKernel& k, cplx z);

enum class CoeffKind { v, w, v_dual, w_dual };
cplx v_w_coeffs(cplx z, const Params& p, CoeffKind which);

}  // namespace km
