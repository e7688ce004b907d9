#pragma once

#include <Eigen/Dense>
#include <functional>

#include "km/common.hpp"
#include "km/params.hpp"
#include "km/partitions.hpp"
#include "km/qseries.hpp"
#include "km/symcore.hpp"

namespace km {

/// Shift coefficient V_{eps J, K}: w over the signed members, the shifted
/// sinh pair products within J, and the plain pair couplings between J and K.
/// dual_side selects the dual kernel (shift step 1 instead of beta).
cplx coeff_V(const SignedSet& s, const std::vector<int>& K, const ComplexVec& x, const Params& p,
             bool dual_side);

/// Lower-order completion U_{K,m}: the signed sum over subsets L of K of size
/// m with reflected pair factors.  U_{K,0} = 1; an oversized m gives the
/// empty sum 0.  term_scale, when given, receives the largest |term| of the
/// signed sum (the natural scale for cancellation-aware comparisons).
cplx coeff_U(const std::vector<int>& K, int m, const ComplexVec& x, const Params& p,
             bool dual_side, double* term_scale = nullptr);

/// Independent route to U_{K,m}: the alternating sum over strictly increasing
/// subset chains ending at size m, each chain contributing a product of
/// V coefficients.
cplx coeff_U_chain(const std::vector<int>& K, int m, const ComplexVec& x, const Params& p,
                   bool dual_side, double* term_scale = nullptr);

/// Second-order eigenvalue E(y) = 2 sum_j (ch(ab y_j) - ch(ab rho_j)).
double eigen_e(const RealVec& y, const Params& p);

/// Order-2r eigenvalue: 2^r sum_m (-1)^{r-m} e_m(ch(ab y)) h_{r-m}(ch(ab rho_r..n)).
/// Vanishes at y = rho; reduces to eigen_e at r = 1.
double eigen_er(int r, const RealVec& y, const Params& p);

/// One term of the difference operator: the move and its U*V coefficient.
struct OpTerm {
  SignedSet move;
  cplx coefficient;
};

/// All terms of D_r at the point x (moves with |J| <= r, every sign pattern).
std::vector<OpTerm> difference_op_terms(int r, const ComplexVec& x, const Params& p,
                                        bool dual_side = false);

/// (D_r f)(x) = sum over terms of coeff * f(x + beta e_{eps J}).
cplx apply_difference_op(int r, const std::function<cplx(const ComplexVec&)>& f,
                         const ComplexVec& x, const Params& p);

/// Matrix of D_r on a down-closed monomial basis, columns expanded by least
/// squares on deterministic generic points.  entries(i,j) is the coefficient
/// of m_{basis[i]} in D_r m_{basis[j]}; triangularity is asserted by callers,
/// not assumed here.
struct OperatorMatrix {
  int r = 1;
  std::vector<Partition> basis;  // ascending (weight, lex)
  Eigen::MatrixXcd entries;
  double max_expand_residual = 0.0;

  int index_of(const Partition& lam) const;
  cplx entry(const Partition& row, const Partition& col) const;
};

OperatorMatrix difference_op_matrix_on_basis(int r, const std::vector<Partition>& basis,
                                             const Params& p, const ExpandConfig& cfg = {});
OperatorMatrix difference_op_matrix(int r, const Partition& lam, const Params& p,
                                    const ExpandConfig& cfg = {});

/// |sum over terms of U*V| together with the magnitude of the largest term;
/// the sum telescopes to zero because the operator annihilates constants.
struct AnnihilationResidual {
  double value_abs = 0.0;
  double scale = 1.0;
  double relative() const { return value_abs / std::max(scale, 1e-300); }
};
AnnihilationResidual annihilation_residual(int r, const ComplexVec& x, const Params& p,
                                           bool dual_side = false);

}  // namespace km
