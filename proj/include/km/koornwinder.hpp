#pragma once

#include <map>

#include "km/common.hpp"
#include "km/operators.hpp"
#include "km/params.hpp"
#include "km/partitions.hpp"
#include "km/symcore.hpp"

namespace km {

enum class BuildMethod { gram_schmidt, operator_route };

/// A monic polynomial of the orthogonal family, held as monomial coefficients.
struct KMPolynomial {
  Partition lam;
  SymPoly coeffs;  // monic at lam, supported on down_set(lam)
  Params params;
  BuildMethod method = BuildMethod::operator_route;
  struct Diagnostics {
    double max_expand_residual = 0.0;  // operator route
    double gram_condition = 0.0;       // quadrature route
    double min_eigen_gap = 0.0;        // operator route back-substitution
  } diagnostics;

  cplx eval(const ComplexVec& x) const;
  double eval_real(const RealVec& x) const;
};

/// Quadrature route: the monomial minus its projection onto the span of all
/// strictly dominated monomials.  Needs n <= 3.
KMPolynomial build_gram_schmidt(const Partition& lam, const Params& p, const QuadGrid& grid,
                                const QPochConfig& qcfg = {});

/// Difference-operator route: triangular back-substitution against the r = 1
/// operator matrix; works in any dimension with separated eigenvalues.
KMPolynomial build_operator(const Partition& lam, const Params& p, const ExpandConfig& cfg = {});

/// p_lam(beta x) / p_lam(beta rho*), normalized to 1 at the dual shifted point.
struct NormalizedEval {
  Partition lam;
  double denominator = 1.0;  // p_lam(beta rho*)
  Params params;
  KMPolynomial poly;

  double eval(const RealVec& x) const;
  cplx eval(const ComplexVec& x) const;
};

/// Throws when the principal specialization is below the nonzero guard
/// (non-generic parameters).
NormalizedEval normalized(const Partition& lam, const Params& p, const ExpandConfig& cfg = {});

/// Closed form of p_lam(beta rho*): the ratio of tilde half weights at
/// rho+lam and rho.
double evaluation_constant(const Partition& lam, const Params& p, const QPochConfig& cfg = {});

/// Closed form of <p_lam, p_lam>: 2^n n! times the product of the two half
/// weights at rho+lam.
double norm_closed_form(const Partition& lam, const Params& p, const QPochConfig& cfg = {});

/// Quadrature value of <p_lam, p_lam> using the operator-route polynomial.
double norm_quadrature(const Partition& lam, const Params& p, const QuadGrid& grid,
                       const QPochConfig& qcfg = {}, const ExpandConfig& cfg = {});

/// Total mass <1,1> as the explicit q-shifted-factorial product over the
/// Askey-Wilson letters.  The degenerate t -> 1 pair is cancelled exactly, so
/// zero couplings are fine.
double gustafson_constant(const Params& p, const QPochConfig& cfg = {});

/// Memoized polynomials and normalized evaluations for one parameter set.
class PolynomialTable {
 public:
  explicit PolynomialTable(Params p, ExpandConfig cfg = {});
  const Params& params() const { return p_; }
  const KMPolynomial& operator_poly(const Partition& lam);
  const NormalizedEval& normalized_poly(const Partition& lam);

 private:
  Params p_;
  ExpandConfig cfg_;
  std::map<Partition, KMPolynomial> polys_;
  std::map<Partition, NormalizedEval> normalized_;
};

/// Right-hand side of the degree-r recurrence at the point x: the sum over
/// admissible moves of the dual U*V coefficients (arguments at rho+lam) times
/// the normalized neighbors.
cplx pieri_rhs(int r, const Partition& lam, const RealVec& x, const Params& p,
               PolynomialTable& table);

/// Both sides of the recurrence plus the magnitude of its largest term.
struct PieriEval {
  cplx lhs;
  cplx rhs;
  double scale;
};
PieriEval pieri_check(int r, const Partition& lam, const RealVec& x, PolynomialTable& table);

/// Terminating basic hypergeometric representation of the normalized
/// one-variable polynomial (n = 1 only).
double phi43(int ell, double x, const Params& p);

}  // namespace km
