#include "km/operators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace km {

namespace {

std::vector<int> complement_of(const std::vector<int>& members, int n) {
  std::vector<int> out;
  out.reserve(n - members.size());
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

void require_disjoint(const SignedSet& s, const std::vector<int>& K) {
  std::set<int> ks(K.begin(), K.end());
  for (int j : s.members)
    if (ks.count(j)) throw InvalidParameterError("coeff_V: signed set and K must be disjoint");
}

}  // namespace

cplx coeff_V(const SignedSet& s, const std::vector<int>& K, const ComplexVec& x, const Params& p,
             bool dual_side) {
  require_disjoint(s, K);
  const VWKernel k = dual_side ? dual_kernel(p) : plain_kernel(p);
  cplx val = 1.0;
  for (int i = 0; i < s.size(); ++i) val *= wfun(k, static_cast<double>(s.signs[i]) * x[s.members[i]]);
  for (int i = 0; i < s.size(); ++i) {
    const cplx zi = static_cast<double>(s.signs[i]) * x[s.members[i]];
    for (int i2 = i + 1; i2 < s.size(); ++i2)
      val *= v_pair_shift(k, zi + static_cast<double>(s.signs[i2]) * x[s.members[i2]]);
    for (int kk : K) {
      val *= vfun(k, zi + x[kk]);
      val *= vfun(k, zi - x[kk]);
    }
  }
  return val;
}

cplx coeff_U(const std::vector<int>& K, int m, const ComplexVec& x, const Params& p,
             bool dual_side, double* term_scale) {
  if (term_scale) *term_scale = 1.0;
  if (m < 0) throw InvalidParameterError("coeff_U: negative order");
  if (m == 0) return 1.0;
  if (m > static_cast<int>(K.size())) return 0.0;  // empty sum
  const VWKernel k = dual_side ? dual_kernel(p) : plain_kernel(p);
  cplx sum = 0.0;
  for (const auto& L : subsets_of_size(K, m)) {
    std::vector<int> rest;
    std::set_difference(K.begin(), K.end(), L.begin(), L.end(), std::back_inserter(rest));
    for (int bits = 0; bits < (1 << m); ++bits) {
      cplx term = 1.0;
      for (int i = 0; i < m; ++i) {
        const double sign = (bits >> i) & 1 ? -1.0 : 1.0;
        term *= wfun(k, sign * x[L[i]]);
      }
      for (int i = 0; i < m; ++i) {
        const double si = (bits >> i) & 1 ? -1.0 : 1.0;
        const cplx zi = si * x[L[i]];
        for (int i2 = i + 1; i2 < m; ++i2) {
          const double s2 = (bits >> i2) & 1 ? -1.0 : 1.0;
          term *= v_pair_reflect(k, zi + s2 * x[L[i2]]);
        }
        for (int kk : rest) {
          term *= vfun(k, zi + x[kk]);
          term *= vfun(k, zi - x[kk]);
        }
      }
      sum += term;
      if (term_scale) *term_scale = std::max(*term_scale, std::abs(term));
    }
  }
  return (m % 2 ? -1.0 : 1.0) * sum;
}

namespace {

// all strictly increasing chains of nonempty subsets ending exactly at F
void chains_ending_at(const std::vector<int>& F,
                      std::vector<std::vector<std::vector<int>>>& out) {
  out.push_back({F});
  const int sz = static_cast<int>(F.size());
  for (int k = 1; k < sz; ++k) {
    for (const auto& S : subsets_of_size(F, k)) {
      std::vector<std::vector<std::vector<int>>> sub;
      chains_ending_at(S, sub);
      for (auto& c : sub) {
        c.push_back(F);
        out.push_back(std::move(c));
      }
    }
  }
}

}  // namespace

cplx coeff_U_chain(const std::vector<int>& K, int m, const ComplexVec& x, const Params& p,
                   bool dual_side, double* term_scale) {
  if (term_scale) *term_scale = 1.0;
  if (m < 0) throw InvalidParameterError("coeff_U_chain: negative order");
  if (m == 0) return 1.0;
  if (m > static_cast<int>(K.size())) return 0.0;

  cplx sum = 0.0;
  for (const auto& F : subsets_of_size(K, m)) {
    std::vector<std::vector<std::vector<int>>> chains;
    chains_ending_at(F, chains);
    for (int bits = 0; bits < (1 << m); ++bits) {
      // one sign per element of F, shared across the whole chain
      auto sign_of = [&](int member) {
        for (int i = 0; i < m; ++i)
          if (F[i] == member) return (bits >> i) & 1 ? -1 : 1;
        throw Error("coeff_U_chain: member not in final set");
      };
      for (const auto& chain : chains) {
        cplx term = (chain.size() % 2 ? -1.0 : 1.0);
        std::vector<int> prev;
        for (const auto& Li : chain) {
          std::vector<int> diff;
          std::set_difference(Li.begin(), Li.end(), prev.begin(), prev.end(),
                              std::back_inserter(diff));
          SignedSet ss;
          ss.members = diff;
          for (int d : diff) ss.signs.push_back(sign_of(d));
          std::vector<int> KmLi;
          std::set_difference(K.begin(), K.end(), Li.begin(), Li.end(),
                              std::back_inserter(KmLi));
          term *= coeff_V(ss, KmLi, x, p, dual_side);
          prev = Li;
        }
        sum += term;
        if (term_scale) *term_scale = std::max(*term_scale, std::abs(term));
      }
    }
  }
  return sum;
}

double eigen_e(const RealVec& y, const Params& p) {
  if (static_cast<int>(y.size()) != p.n) throw InvalidParameterError("eigen_e: dimension mismatch");
  const double ab = p.alpha * p.beta;
  const RealVec rho = p.rho();
  double sum = 0.0;
  for (int j = 0; j < p.n; ++j) sum += std::cosh(ab * y[j]) - std::cosh(ab * rho[j]);
  return 2.0 * sum;
}

double eigen_er(int r, const RealVec& y, const Params& p) {
  const int n = p.n;
  if (r < 1 || r > n) throw InvalidParameterError("eigen_er: r out of range");
  if (static_cast<int>(y.size()) != n) throw InvalidParameterError("eigen_er: dimension mismatch");
  const double ab = p.alpha * p.beta;
  const RealVec rho = p.rho();

  // e_m of ch(ab y_1..n)
  std::vector<double> e(r + 1, 0.0);
  e[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    const double t = std::cosh(ab * y[j]);
    for (int m = std::min(r, j + 1); m >= 1; --m) e[m] += t * e[m - 1];
  }
  // h_s of ch(ab rho_l), l = r..n (1-based)
  std::vector<double> h(r + 1, 0.0);
  h[0] = 1.0;
  for (int l = r - 1; l < n; ++l) {
    const double t = std::cosh(ab * rho[l]);
    for (int s = 1; s <= r; ++s) h[s] += t * h[s - 1];
  }
  double sum = 0.0;
  for (int m = 0; m <= r; ++m) {
    const double sgn = ((r - m) % 2) ? -1.0 : 1.0;
    sum += sgn * e[m] * h[r - m];
  }
  return std::ldexp(sum, r);
}

std::vector<OpTerm> difference_op_terms(int r, const ComplexVec& x, const Params& p,
                                        bool dual_side) {
  const int n = p.n;
  if (r < 1 || r > n) throw InvalidParameterError("difference_op_terms: r out of range");
  if (static_cast<int>(x.size()) != n)
    throw InvalidParameterError("difference_op_terms: dimension mismatch");
  std::vector<OpTerm> terms;
  for (const SignedSet& s : all_signed_sets(n, r)) {
    const std::vector<int> Jc = complement_of(s.members, n);
    const cplx u = coeff_U(Jc, r - s.size(), x, p, dual_side);
    const cplx v = coeff_V(s, Jc, x, p, dual_side);
    terms.push_back({s, u * v});
  }
  return terms;
}

cplx apply_difference_op(int r, const std::function<cplx(const ComplexVec&)>& f,
                         const ComplexVec& x, const Params& p) {
  cplx sum = 0.0;
  for (const OpTerm& t : difference_op_terms(r, x, p, false)) {
    ComplexVec xs = x;
    for (int i = 0; i < t.move.size(); ++i)
      xs[t.move.members[i]] += p.beta * static_cast<double>(t.move.signs[i]);
    sum += t.coefficient * f(xs);
  }
  return sum;
}

int OperatorMatrix::index_of(const Partition& lam) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == lam) return static_cast<int>(i);
  return -1;
}

cplx OperatorMatrix::entry(const Partition& row, const Partition& col) const {
  const int i = index_of(row), j = index_of(col);
  if (i < 0 || j < 0) throw InvalidParameterError("OperatorMatrix::entry: partition not in basis");
  return entries(i, j);
}

OperatorMatrix difference_op_matrix_on_basis(int r, const std::vector<Partition>& basis_in,
                                             const Params& p, const ExpandConfig& cfg) {
  if (basis_in.empty()) throw InvalidParameterError("difference_op_matrix: empty basis");
  std::vector<Partition> basis = basis_in;
  std::sort(basis.begin(), basis.end(), [](const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a < b;
  });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  const std::set<Partition> present(basis.begin(), basis.end());
  for (const Partition& nu : basis)
    for (const Partition& mu : down_set(nu))
      if (!present.count(mu))
        throw InvalidParameterError("difference_op_matrix: basis is not closed downward");

  const int B = static_cast<int>(basis.size());
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;

  for (int attempt = 0; attempt < 2; ++attempt) {
    const int K = std::max(cfg.oversample * B, B + 4) << attempt;

    // draw points at which every coefficient of D_r is regular
    std::vector<ComplexVec> pts;
    std::vector<std::vector<OpTerm>> terms;
    int guard = 0;
    while (static_cast<int>(pts.size()) < K) {
      if (++guard > 50 * K)
        throw NearPoleError("difference_op_matrix: could not find pole-free sample points");
      auto cand = draw_expansion_points(p.n, p.alpha, 1, rng);
      try {
        auto t = difference_op_terms(r, cand[0], p, false);
        pts.push_back(std::move(cand[0]));
        terms.push_back(std::move(t));
      } catch (const NearPoleError&) {
        // unlucky draw, try the next one
      }
    }

    Eigen::MatrixXcd A(K, B);
    Eigen::MatrixXcd Y(K, B);
    Eigen::VectorXd yscale = Eigen::VectorXd::Zero(B);  // cancellation scale per column
    for (int k = 0; k < K; ++k) {
      for (int i = 0; i < B; ++i) A(k, i) = eval_monomial(basis[i], pts[k], p);
      for (int j = 0; j < B; ++j) {
        cplx sum = 0.0;
        double mag = 0.0;
        for (const OpTerm& t : terms[k]) {
          ComplexVec xs = pts[k];
          for (int i = 0; i < t.move.size(); ++i)
            xs[t.move.members[i]] += p.beta * static_cast<double>(t.move.signs[i]);
          const cplx contrib = t.coefficient * eval_monomial(basis[j], xs, p);
          sum += contrib;
          mag += std::abs(contrib);
        }
        Y(k, j) = sum;
        yscale(j) = std::max(yscale(j), mag);
      }
    }

    Eigen::VectorXd colnorm(B);
    for (int i = 0; i < B; ++i) {
      colnorm(i) = A.col(i).norm();
      if (colnorm(i) == 0.0) colnorm(i) = 1.0;
      A.col(i) /= colnorm(i);
    }
    const auto qr = A.colPivHouseholderQr();
    Eigen::MatrixXcd C = qr.solve(Y);
    C += qr.solve(Y - A * C);

    worst = 0.0;
    const double sqK = std::sqrt(static_cast<double>(K));
    for (int j = 0; j < B; ++j) {
      const double ynorm = Y.col(j).norm();
      if (ynorm <= 1e-11 * yscale(j) * sqK) {
        // the image column cancelled to rounding noise; it is exactly zero
        C.col(j).setZero();
        continue;
      }
      worst = std::max(worst, (A * C.col(j) - Y.col(j)).norm() / ynorm);
    }
    if (worst <= cfg.tol) {
      OperatorMatrix out;
      out.r = r;
      out.basis = std::move(basis);
      out.entries = Eigen::MatrixXcd(B, B);
      for (int i = 0; i < B; ++i)
        for (int j = 0; j < B; ++j) out.entries(i, j) = C(i, j) / colnorm(i);
      out.max_expand_residual = worst;
      return out;
    }
  }
  throw NotInSpanError(
      "difference_op_matrix: expansion residual " + std::to_string(worst) + " above tolerance",
      worst);
}

OperatorMatrix difference_op_matrix(int r, const Partition& lam, const Params& p,
                                    const ExpandConfig& cfg) {
  return difference_op_matrix_on_basis(r, down_set(lam), p, cfg);
}

AnnihilationResidual annihilation_residual(int r, const ComplexVec& x, const Params& p,
                                           bool dual_side) {
  cplx sum = 0.0;
  double scale = 0.0;
  for (const OpTerm& t : difference_op_terms(r, x, p, dual_side)) {
    sum += t.coefficient;
    scale = std::max(scale, std::abs(t.coefficient));
  }
  return {std::abs(sum), std::max(scale, 1e-300)};
}

}  // namespace km
