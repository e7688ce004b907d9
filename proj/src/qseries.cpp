#include "km/qseries.hpp"

#include <cmath>
#include <sstream>

namespace km {

namespace {

void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameterError("qpoch: q must lie in (0,1)");
}

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Arguments below this magnitude are treated as hitting a zero of sh; the
// coefficient machinery then demands a structurally matched zero upstairs.
constexpr double kTinyArg = 1e-9;

}  // namespace

cplx qpoch(cplx a, double q, const QPochConfig& cfg, EvalFlags* flags) {
  require_q(q);
  cplx prod = 1.0;
  cplx aq = a;
  double mag = std::abs(a);
  int l = 0;
  while (mag > cfg.truncation_eps) {
    if (l >= cfg.max_terms) {
      if (flags) flags->truncated = true;
      break;
    }
    prod *= (1.0 - aq);
    aq *= q;
    mag *= q;
    ++l;
  }
  return prod;
}

double qpoch(double a, double q, const QPochConfig& cfg, EvalFlags* flags) {
  require_q(q);
  double prod = 1.0;
  double aq = a;
  int l = 0;
  while (std::abs(aq) > cfg.truncation_eps) {
    if (l >= cfg.max_terms) {
      if (flags) flags->truncated = true;
      break;
    }
    prod *= (1.0 - aq);
    aq *= q;
    ++l;
  }
  return prod;
}

cplx qpoch(std::initializer_list<cplx> as, double q, const QPochConfig& cfg, EvalFlags* flags) {
  cplx prod = 1.0;
  for (cplx a : as) prod *= qpoch(a, q, cfg, flags);
  return prod;
}

cplx weight_dv(cplx u, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  if (p.g == 0.0) return 1.0;
  const double q = p.q();
  cplx den = qpoch(p.qpow(p.g) * u, q, cfg, flags);
  if (std::abs(den) <= cfg.truncation_eps)
    throw NearPoleError("weight_dv: denominator (q^g u;q) ~ 0 at u=" + fmt_cplx(u));
  return qpoch(u, q, cfg, flags) / den;
}

cplx weight_dw(cplx u, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  const double q = p.q();
  const double sq = std::sqrt(q);
  struct Leg {
    double coupling;
    cplx prefix;  // numerator argument = prefix*u, denominator = prefix*q^coupling*u
  };
  const Leg legs[4] = {{p.g0, 1.0}, {p.g1, -1.0}, {p.g2, sq}, {p.g3, -sq}};
  cplx val = 1.0;
  for (const Leg& leg : legs) {
    if (leg.coupling == 0.0) continue;
    cplx den = qpoch(leg.prefix * p.qpow(leg.coupling) * u, q, cfg, flags);
    if (std::abs(den) <= cfg.truncation_eps)
      throw NearPoleError("weight_dw: denominator factor ~ 0 at u=" + fmt_cplx(u));
    val *= qpoch(leg.prefix * u, q, cfg, flags) / den;
  }
  return val;
}

cplx weight_delta(const ComplexVec& x, const Params& p, const QPochConfig& cfg,
                  EvalFlags* flags) {
  const int n = p.n;
  if (static_cast<int>(x.size()) != n)
    throw InvalidParameterError("weight_delta: point has wrong dimension");
  ComplexVec u(n);
  for (int j = 0; j < n; ++j) u[j] = std::exp(-p.alpha * x[j]);
  cplx val = 1.0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      val *= weight_dv(u[j] * u[k], p, cfg, flags);
      val *= weight_dv(u[j] / u[k], p, cfg, flags);
      val *= weight_dv(u[k] / u[j], p, cfg, flags);
      val *= weight_dv(1.0 / (u[j] * u[k]), p, cfg, flags);
    }
    val *= weight_dw(u[j], p, cfg, flags);
    val *= weight_dw(1.0 / u[j], p, cfg, flags);
  }
  return val;
}

namespace {

// One letter of the tilde/hat half weights:
//   prefactor^z_or_z1 * (sign q^{off+z'};q) / (sign q^{coupling+off+z'};q).
// Written out per call site below; this helper only guards the denominator.
double guarded_ratio(double num_arg, double den_arg, double q, const QPochConfig& cfg,
                     EvalFlags* flags, const char* what) {
  double den = qpoch(den_arg, q, cfg, flags);
  if (std::abs(den) <= cfg.truncation_eps)
    throw NearPoleError(std::string(what) + ": denominator q-factorial ~ 0");
  return qpoch(num_arg, q, cfg, flags) / den;
}

}  // namespace

double tilde_dv(double z, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  const Params d = dual(p);
  if (d.g == 0.0) return 1.0;
  const double q = p.q();
  return p.qpow(-d.g * z / 2.0) *
         guarded_ratio(p.qpow(z), p.qpow(d.g + z), q, cfg, flags, "tilde_dv");
}

double tilde_dw(double z, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  const Params d = dual(p);
  const double q = p.q();
  struct Leg {
    double coupling;
    double sign;
    double off;
  };
  const Leg legs[4] = {{d.g0, 1.0, 0.0}, {d.g1, -1.0, 0.0}, {d.g2, 1.0, 0.5}, {d.g3, -1.0, 0.5}};
  double val = 1.0;
  for (const Leg& leg : legs) {
    if (leg.coupling == 0.0) continue;
    val *= p.qpow(-leg.coupling * z / 2.0) *
           guarded_ratio(leg.sign * p.qpow(leg.off + z), leg.sign * p.qpow(leg.coupling + leg.off + z),
                         q, cfg, flags, "tilde_dw");
  }
  return val;
}

// The reflected letters negate the dual couplings and shift the integer-offset
// arguments by one; the half-offset arguments and the exponential prefactor
// stay put.  This is the unique normalization compatible with both shift
// relations and the total-mass evaluation (checked against direct quadrature).
double hat_dv(double z, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  const Params d = dual(p);
  if (d.g == 0.0) return 1.0;
  const double q = p.q();
  return p.qpow(d.g * z / 2.0) *
         guarded_ratio(p.qpow(z + 1.0), p.qpow(-d.g + z + 1.0), q, cfg, flags, "hat_dv");
}

double hat_dw(double z, const Params& p, const QPochConfig& cfg, EvalFlags* flags) {
  const Params d = dual(p);
  const double q = p.q();
  struct Leg {
    double coupling;
    double sign;
    double off;
  };
  const Leg legs[4] = {{d.g0, 1.0, 1.0}, {d.g1, -1.0, 1.0}, {d.g2, 1.0, 0.5}, {d.g3, -1.0, 0.5}};
  double val = 1.0;
  for (const Leg& leg : legs) {
    if (leg.coupling == 0.0) continue;
    val *= p.qpow(leg.coupling * z / 2.0) *
           guarded_ratio(leg.sign * p.qpow(leg.off + z),
                         leg.sign * p.qpow(-leg.coupling + leg.off + z), q, cfg, flags,
                         "hat_dw");
  }
  return val;
}

namespace {

double half_weight_impl(const RealVec& y, const Params& p, const QPochConfig& cfg,
                        EvalFlags* flags, bool hat) {
  const int n = p.n;
  if (static_cast<int>(y.size()) != n)
    throw InvalidParameterError("half_weight: point has wrong dimension");
  auto dv = hat ? hat_dv : tilde_dv;
  auto dw = hat ? hat_dw : tilde_dw;
  double val = 1.0;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      val *= dv(y[j] + y[k], p, cfg, flags);
      val *= dv(y[j] - y[k], p, cfg, flags);
    }
    val *= dw(y[j], p, cfg, flags);
  }
  return val;
}

}  // namespace

double half_weight_tilde(const RealVec& y, const Params& p, const QPochConfig& cfg,
                         EvalFlags* flags) {
  return half_weight_impl(y, p, cfg, flags, false);
}

double half_weight_hat(const RealVec& y, const Params& p, const QPochConfig& cfg,
                       EvalFlags* flags) {
  return half_weight_impl(y, p, cfg, flags, true);
}

VWKernel plain_kernel(const Params& p) {
  return {p.alpha / 2.0, p.beta * p.g,          p.beta * p.g0, p.beta * p.g1,
          p.beta * p.g2, p.beta * p.g3,         p.beta / 2.0,  p.beta};
}

VWKernel dual_kernel(const Params& p) {
  const Params d = dual(p);
  return {p.alpha * p.beta / 2.0, d.g, d.g0, d.g1, d.g2, d.g3, 0.5, 1.0};
}

namespace {

cplx sh(cplx z) { return std::sinh(z); }
cplx chk_den_sh(double c, cplx z, const char* what) {
  cplx d = std::sinh(c * z);
  if (std::abs(d) < 1e-10)
    throw NearPoleError(std::string(what) + ": sh denominator ~ 0 at z=" + fmt_cplx(z));
  return d;
}
cplx chk_den_ch(double c, cplx z, const char* what) {
  cplx d = std::cosh(c * z);
  if (std::abs(d) < 1e-10)
    throw NearPoleError(std::string(what) + ": ch denominator ~ 0 at z=" + fmt_cplx(z));
  return d;
}

}  // namespace

cplx vfun(const VWKernel& k, cplx z) {
  if (k.G == 0.0) return 1.0;
  return sh(k.c * (k.G + z)) / chk_den_sh(k.c, z, "v");
}

cplx wfun(const VWKernel& k, cplx z) {
  cplx val = 1.0;
  if (k.G0 != 0.0) val *= sh(k.c * (k.G0 + z)) / chk_den_sh(k.c, z, "w[0]");
  if (k.G1 != 0.0) val *= std::cosh(k.c * (k.G1 + z)) / chk_den_ch(k.c, z, "w[1]");
  if (k.G2 != 0.0) val *= sh(k.c * (k.G2 + k.h + z)) / chk_den_sh(k.c, k.h + z, "w[2]");
  if (k.G3 != 0.0) val *= std::cosh(k.c * (k.G3 + k.h + z)) / chk_den_ch(k.c, k.h + z, "w[3]");
  return val;
}

// Joint evaluation of the coefficient pairs.  The arguments that matter are
// of the form z = +/- differences of the shifted-lattice points rho + lam, so
// along the coupling family they are affine in g with a nonzero integer
// slope.  When a denominator zero coincides with a numerator zero (e.g.
// z = -g with g = s, from adjacent equal parts), the numerator argument
// vanishes identically along that family while the denominator zero is an
// accident of the special coupling, so the pair vanishes: the zero wins.
// A denominator zero with no matching numerator zero is a genuine pole.

cplx v_pair_shift(const VWKernel& k, cplx z) {
  if (k.G == 0.0) return 1.0;
  const cplx n1 = k.G + z, n2 = k.G + z + k.s;
  const cplx d1 = z, d2 = z + k.s;
  if (std::abs(d1) < kTinyArg) {
    if (std::abs(n2) < kTinyArg) return 0.0;
    throw NearPoleError("v_pair_shift: sh(c z) ~ 0 without matching zero, z=" + fmt_cplx(z));
  }
  if (std::abs(d2) < kTinyArg) {
    if (std::abs(n1) < kTinyArg) return 0.0;
    throw NearPoleError("v_pair_shift: sh(c(z+s)) ~ 0 without matching zero, z=" + fmt_cplx(z));
  }
  return sh(k.c * n1) * sh(k.c * n2) /
         (chk_den_sh(k.c, d1, "v_pair_shift") * chk_den_sh(k.c, d2, "v_pair_shift"));
}

cplx v_pair_reflect(const VWKernel& k, cplx z) {
  if (k.G == 0.0) return 1.0;
  const cplx n1 = k.G + z, n2 = k.G - z - k.s;
  const cplx d1 = z, d2 = -z - k.s;
  if (std::abs(d1) < kTinyArg) {
    if (std::abs(n2) < kTinyArg) return 0.0;
    throw NearPoleError("v_pair_reflect: sh(c z) ~ 0 without matching zero, z=" + fmt_cplx(z));
  }
  if (std::abs(d2) < kTinyArg) {
    if (std::abs(n1) < kTinyArg) return 0.0;
    throw NearPoleError("v_pair_reflect: sh(c(-z-s)) ~ 0 without matching zero, z=" + fmt_cplx(z));
  }
  return sh(k.c * n1) * sh(k.c * n2) /
         (chk_den_sh(k.c, d1, "v_pair_reflect") * chk_den_sh(k.c, d2, "v_pair_reflect"));
}

cplx v_w_coeffs(cplx z, const Params& p, CoeffKind which) {
  switch (which) {
    case CoeffKind::v: return vfun(plain_kernel(p), z);
    case CoeffKind::w: return wfun(plain_kernel(p), z);
    case CoeffKind::v_dual: return vfun(dual_kernel(p), z);
    case CoeffKind::w_dual: return wfun(dual_kernel(p), z);
  }
  throw InvalidParameterError("v_w_coeffs: unknown kind");
}

}  // namespace km
