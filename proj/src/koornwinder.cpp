#include "km/koornwinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace km {

cplx KMPolynomial::eval(const ComplexVec& x) const { return eval_sympoly(coeffs, x, params); }

double KMPolynomial::eval_real(const RealVec& x) const {
  double sum = 0.0;
  for (const auto& [mu, c] : coeffs.coeffs) sum += c.real() * eval_monomial(mu, x, params);
  return sum;
}

KMPolynomial build_gram_schmidt(const Partition& lam, const Params& p, const QuadGrid& grid,
                                const QPochConfig& qcfg) {
  if (lam.size() != p.n) throw InvalidParameterError("build_gram_schmidt: partition length != n");
  const std::vector<Partition> basis = down_set(lam);  // lam is last
  const int B = static_cast<int>(basis.size());

  KMPolynomial out;
  out.lam = lam;
  out.params = p;
  out.method = BuildMethod::gram_schmidt;
  out.coeffs.add(lam, 1.0);
  if (B == 1) return out;

  const Eigen::MatrixXd G = monomial_gram(basis, p, grid, qcfg);
  const Eigen::MatrixXd A = G.topLeftCorner(B - 1, B - 1);
  const Eigen::VectorXd b = G.topRightCorner(B - 1, 1);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(B - 2);
  const double cond = smax / std::max(smin, 1e-300);
  if (!(smin > 0.0) || cond > 1e12)
    throw ConditioningError("build_gram_schmidt: singular monomial Gram matrix", cond);
  const Eigen::VectorXd a = svd.solve(b);

  out.diagnostics.gram_condition = cond;
  for (int i = 0; i < B - 1; ++i)
    if (a(i) != 0.0) out.coeffs.add(basis[i], -a(i));
  return out;
}

KMPolynomial build_operator(const Partition& lam, const Params& p, const ExpandConfig& cfg) {
  if (lam.size() != p.n) throw InvalidParameterError("build_operator: partition length != n");
  const std::vector<Partition> basis = down_set(lam);
  const int B = static_cast<int>(basis.size());
  const RealVec rho = p.rho();

  KMPolynomial out;
  out.lam = lam;
  out.params = p;
  out.method = BuildMethod::operator_route;
  out.coeffs.add(lam, 1.0);
  if (B == 1) return out;

  const OperatorMatrix M = difference_op_matrix_on_basis(1, basis, p, cfg);
  out.diagnostics.max_expand_residual = M.max_expand_residual;

  auto shifted = [&](const Partition& mu) {
    RealVec y(p.n);
    for (int j = 0; j < p.n; ++j) y[j] = rho[j] + mu[j];
    return y;
  };
  const double e_top = eigen_er(1, shifted(lam), p);

  std::vector<cplx> c(B, cplx(0.0));
  c[B - 1] = 1.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = B - 2; i >= 0; --i) {
    const double e_i = eigen_er(1, shifted(basis[i]), p);
    const double gap = e_top - e_i;
    min_gap = std::min(min_gap, std::abs(gap));
    if (std::abs(gap) < 1e-10 * std::max(1.0, std::abs(e_top)))
      throw DegenerateSpectrumError("build_operator: eigenvalue collision between " +
                                    lam.to_string() + " and " + basis[i].to_string());
    cplx num = 0.0;
    for (int j = i + 1; j < B; ++j)
      if (dominance_lt(basis[i], basis[j])) num += c[j] * M.entries(i, j);
    c[i] = num / gap;
  }
  out.diagnostics.min_eigen_gap = min_gap;
  for (int i = 0; i < B - 1; ++i)
    if (c[i] != cplx(0.0)) out.coeffs.add(basis[i], c[i]);
  return out;
}

double NormalizedEval::eval(const RealVec& x) const {
  RealVec bx(x.size());
  for (size_t j = 0; j < x.size(); ++j) bx[j] = params.beta * x[j];
  return poly.eval_real(bx) / denominator;
}

cplx NormalizedEval::eval(const ComplexVec& x) const {
  ComplexVec bx(x.size());
  for (size_t j = 0; j < x.size(); ++j) bx[j] = params.beta * x[j];
  return poly.eval(bx) / denominator;
}

NormalizedEval normalized(const Partition& lam, const Params& p, const ExpandConfig& cfg) {
  NormalizedEval out;
  out.lam = lam;
  out.params = p;
  out.poly = build_operator(lam, p, cfg);

  const RealVec rs = p.rho_dual();
  RealVec x0(p.n);
  for (int j = 0; j < p.n; ++j) x0[j] = p.beta * rs[j];
  double scale = 0.0;
  for (const auto& [mu, c] : out.poly.coeffs.coeffs)
    scale += std::abs(c) * std::abs(eval_monomial(mu, x0, p));
  const double den = out.poly.eval_real(x0);
  if (std::abs(den) < 1e-10 * std::max(scale, 1e-300))
    throw InvalidParameterError("normalized: principal specialization vanished at " +
                                lam.to_string() + " (non-generic parameters)");
  out.denominator = den;
  return out;
}

double evaluation_constant(const Partition& lam, const Params& p, const QPochConfig& cfg) {
  const RealVec rho = p.rho();
  RealVec y(p.n);
  for (int j = 0; j < p.n; ++j) y[j] = rho[j] + lam[j];
  return half_weight_tilde(y, p, cfg) / half_weight_tilde(rho, p, cfg);
}

namespace {

double two_pow_n_factorial(int n) {
  double v = 1.0;
  for (int j = 1; j <= n; ++j) v *= 2.0 * j;
  return v;
}

}  // namespace

double norm_closed_form(const Partition& lam, const Params& p, const QPochConfig& cfg) {
  const RealVec rho = p.rho();
  RealVec y(p.n);
  for (int j = 0; j < p.n; ++j) y[j] = rho[j] + lam[j];
  return two_pow_n_factorial(p.n) * half_weight_tilde(y, p, cfg) * half_weight_hat(y, p, cfg);
}

double norm_quadrature(const Partition& lam, const Params& p, const QuadGrid& grid,
                       const QPochConfig& qcfg, const ExpandConfig& cfg) {
  const KMPolynomial poly = build_operator(lam, p, cfg);
  return inner_product(poly.coeffs, poly.coeffs, p, grid, qcfg).real();
}

double gustafson_constant(const Params& p, const QPochConfig& cfg) {
  const double q = p.q();
  const AskeyWilsonLetters L = p.letters();
  const double letters[4] = {L.a, L.b, L.c, L.d};
  const double abcd = L.a * L.b * L.c * L.d;  // = q^{g0+g1+g2+g3+1}
  const double qq = qpoch(q, q, cfg);

  double val = two_pow_n_factorial(p.n);
  for (int j = 1; j <= p.n; ++j) {
    // (t;q)/(t^j;q) with the common zero at t = 1 cancelled exactly:
    //   (t q;q) / ((t^j q;q) (1 + t + ... + t^{j-1}))
    double geo = 0.0;
    for (int i = 0; i < j; ++i) geo += p.qpow(i * p.g);
    double factor = qpoch(p.qpow(p.g) * q, q, cfg) / (qpoch(p.qpow(j * p.g) * q, q, cfg) * geo);
    factor *= qpoch(abcd * p.qpow((p.n + j - 2) * p.g), q, cfg);
    factor /= qq;
    for (int r = 0; r < 4; ++r)
      for (int r2 = r + 1; r2 < 4; ++r2)
        factor /= qpoch(letters[r] * letters[r2] * p.qpow((j - 1) * p.g), q, cfg);
    val *= factor;
  }
  return val;
}

PolynomialTable::PolynomialTable(Params p, ExpandConfig cfg) : p_(std::move(p)), cfg_(cfg) {}

const KMPolynomial& PolynomialTable::operator_poly(const Partition& lam) {
  auto it = polys_.find(lam);
  if (it == polys_.end()) it = polys_.emplace(lam, build_operator(lam, p_, cfg_)).first;
  return it->second;
}

const NormalizedEval& PolynomialTable::normalized_poly(const Partition& lam) {
  auto it = normalized_.find(lam);
  if (it == normalized_.end()) it = normalized_.emplace(lam, normalized(lam, p_, cfg_)).first;
  return it->second;
}

namespace {

std::vector<int> complement_of(const std::vector<int>& members, int n) {
  std::vector<int> out;
  size_t i = 0;
  for (int j = 0; j < n; ++j) {
    if (i < members.size() && members[i] == j) {
      ++i;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace

PieriEval pieri_check(int r, const Partition& lam, const RealVec& x, PolynomialTable& table) {
  const Params& p = table.params();
  if (r < 1 || r > p.n) throw InvalidParameterError("pieri_check: r out of range");
  const RealVec rho = p.rho();
  ComplexVec y(p.n);
  for (int j = 0; j < p.n; ++j) y[j] = rho[j] + lam[j];

  const double estar = eigen_er(r, x, dual(p));
  const cplx lhs = estar * table.normalized_poly(lam).eval(x);
  double scale = std::abs(lhs);

  cplx rhs = 0.0;
  for (const SignedSet& move : signed_moves(lam, r)) {
    const auto mu = add_move(lam, move);
    const std::vector<int> jc = complement_of(move.members, p.n);
    const cplx coeff = coeff_U(jc, r - move.size(), y, p, true) * coeff_V(move, jc, y, p, true);
    const cplx term = coeff * table.normalized_poly(*mu).eval(x);
    rhs += term;
    scale = std::max(scale, std::abs(term));
  }
  return {lhs, rhs, std::max(scale, 1e-300)};
}

cplx pieri_rhs(int r, const Partition& lam, const RealVec& x, const Params& p,
               PolynomialTable& table) {
  if (table.params().digest() != p.digest())
    throw InvalidParameterError("pieri_rhs: table built for different parameters");
  const RealVec rho = p.rho();
  ComplexVec y(p.n);
  for (int j = 0; j < p.n; ++j) y[j] = rho[j] + lam[j];
  cplx rhs = 0.0;
  for (const SignedSet& move : signed_moves(lam, r)) {
    const auto mu = add_move(lam, move);
    const std::vector<int> jc = complement_of(move.members, p.n);
    const cplx coeff = coeff_U(jc, r - move.size(), y, p, true) * coeff_V(move, jc, y, p, true);
    rhs += coeff * table.normalized_poly(*mu).eval(x);
  }
  return rhs;
}

double phi43(int ell, double x, const Params& p) {
  if (p.n != 1) throw InvalidParameterError("phi43: defined for n = 1 only");
  if (ell < 0) throw InvalidParameterError("phi43: negative degree");
  const double q = p.q();
  const Params d = dual(p);

  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < ell; ++k) {
    const double num = (1.0 - p.qpow(k - ell)) * (1.0 - p.qpow(2.0 * d.g0 + ell + k)) *
                       (1.0 - p.qpow(p.g0 - x + k)) * (1.0 - p.qpow(p.g0 + x + k));
    const double den_factors[4] = {
        1.0 - p.qpow(static_cast<double>(k + 1)),   // (q;q)_k advance
        1.0 + p.qpow(p.g0 + p.g1 + k),              // letter pair -q^{g0+g1}
        1.0 - p.qpow(p.g0 + p.g2 + 0.5 + k),        //  q^{g0+g2+1/2}
        1.0 + p.qpow(p.g0 + p.g3 + 0.5 + k),        // -q^{g0+g3+1/2}
    };
    double den = 1.0;
    for (double f : den_factors) {
      if (std::abs(f) < 1e-12)
        throw InvalidParameterError("phi43: lower-parameter q-factorial vanished (degenerate parameters)");
      den *= f;
    }
    term *= num / den * q;
    sum += term;
  }
  return sum;
}

}  // namespace km
