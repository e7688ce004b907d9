#include "km/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace km {

int default_grid_points(int max_degree) { return std::max(32, 4 * max_degree + 16); }

void for_each_orbit_vector(const Partition& lam,
                           const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> perm = lam.parts();
  std::sort(perm.begin(), perm.end());
  std::vector<int> v(perm.size());
  do {
    std::vector<int> nz;
    for (size_t j = 0; j < perm.size(); ++j)
      if (perm[j] != 0) nz.push_back(static_cast<int>(j));
    const int flips = 1 << nz.size();
    for (int bits = 0; bits < flips; ++bits) {
      v = perm;
      for (size_t i = 0; i < nz.size(); ++i)
        if ((bits >> i) & 1) v[nz[i]] = -v[nz[i]];
      fn(v);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

cplx eval_monomial(const Partition& lam, const ComplexVec& x, const Params& p) {
  if (lam.size() != static_cast<int>(x.size()))
    throw InvalidParameterError("eval_monomial: dimension mismatch");
  cplx sum = 0.0;
  for_each_orbit_vector(lam, [&](const std::vector<int>& v) {
    cplx e = 0.0;
    for (size_t j = 0; j < v.size(); ++j) e += static_cast<double>(v[j]) * x[j];
    sum += std::exp(p.alpha * e);
  });
  return sum;
}

double eval_monomial(const Partition& lam, const RealVec& x, const Params& p) {
  if (lam.size() != static_cast<int>(x.size()))
    throw InvalidParameterError("eval_monomial: dimension mismatch");
  double sum = 0.0;
  for_each_orbit_vector(lam, [&](const std::vector<int>& v) {
    double e = 0.0;
    for (size_t j = 0; j < v.size(); ++j) e += v[j] * x[j];
    sum += std::exp(p.alpha * e);
  });
  return sum;
}

cplx eval_sympoly(const SymPoly& f, const ComplexVec& x, const Params& p) {
  cplx sum = 0.0;
  for (const auto& [lam, c] : f.coeffs) sum += c * eval_monomial(lam, x, p);
  return sum;
}

namespace {

// Sample directions with entries ~ 1/sqrt(prime): distinct and
// incommensurate enough to keep monomial growth rates separated.
RealVec sample_direction(int n) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  RealVec u(n);
  for (int j = 0; j < n; ++j) u[j] = 0.93 / std::sqrt(static_cast<double>(primes[j % 8]));
  return u;
}

}  // namespace

std::vector<ComplexVec> draw_generic_points(int n, int count, std::mt19937_64& rng) {
  const RealVec u = sample_direction(n);
  std::uniform_real_distribution<double> scale(0.3, 1.9);
  std::uniform_real_distribution<double> jitter(0.0, 0.045);
  std::vector<ComplexVec> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double s = scale(rng);
    ComplexVec x(n);
    for (int j = 0; j < n; ++j) x[j] = s * u[j] + jitter(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<ComplexVec> draw_expansion_points(int n, double alpha, int count,
                                              std::mt19937_64& rng) {
  const RealVec u = sample_direction(n);
  std::uniform_real_distribution<double> jitter(0.0, 0.004);
  const double half_period = 0.93 * std::numbers::pi / alpha;
  std::uniform_real_distribution<double> angle(-half_period, half_period);
  std::vector<ComplexVec> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    ComplexVec x(n);
    for (int j = 0; j < n; ++j) x[j] = cplx(0.23 * u[j] + jitter(rng), angle(rng));
    pts.push_back(std::move(x));
  }
  return pts;
}

SymPoly expand_from_samples(const std::function<cplx(const ComplexVec&)>& f,
                            const std::vector<Partition>& basis, const Params& p,
                            const ExpandConfig& cfg) {
  if (basis.empty()) throw InvalidParameterError("expand_from_samples: empty basis");
  const int B = static_cast<int>(basis.size());
  std::mt19937_64 rng(cfg.seed);

  double residual = 0.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int K = std::max(cfg.oversample * B, B + 4) << attempt;
    const auto pts = draw_expansion_points(p.n, p.alpha, K, rng);

    Eigen::MatrixXcd A(K, B);
    Eigen::VectorXcd y(K);
    for (int k = 0; k < K; ++k) {
      for (int i = 0; i < B; ++i) A(k, i) = eval_monomial(basis[i], pts[k], p);
      y(k) = f(pts[k]);
    }
    // column scaling keeps the mixed monomial magnitudes from skewing the QR
    Eigen::VectorXd colnorm(B);
    for (int i = 0; i < B; ++i) {
      colnorm(i) = A.col(i).norm();
      if (colnorm(i) == 0.0) colnorm(i) = 1.0;
      A.col(i) /= colnorm(i);
    }
    const auto qr = A.colPivHouseholderQr();
    Eigen::VectorXcd c = qr.solve(y);
    c += qr.solve(y - A * c);  // one step of iterative refinement
    const double ynorm = std::max(y.norm(), 1e-300);
    residual = (A * c - y).norm() / ynorm;
    if (residual <= cfg.tol) {
      SymPoly out;
      for (int i = 0; i < B; ++i) {
        const cplx ci = c(i) / colnorm(i);
        if (ci != cplx(0.0)) out.coeffs[basis[i]] = ci;
      }
      out.fit_residual = residual;
      return out;
    }
  }
  throw NotInSpanError("expand_from_samples: fit residual " + std::to_string(residual) +
                           " above tolerance",
                       residual);
}

namespace {

void require_quadrature_dim(const QuadGrid& grid, const Params& p) {
  if (grid.n != p.n) throw InvalidParameterError("quadrature grid dimension != parameter n");
  if (grid.n > 3) throw InvalidParameterError("quadrature paths support n <= 3");
  if (grid.M < 2) throw InvalidParameterError("quadrature grid needs M >= 2");
}

template <typename F>
void for_each_node(const QuadGrid& grid, F&& fn) {
  std::vector<int> k(grid.n, 0);
  while (true) {
    fn(k);
    int j = grid.n - 1;
    while (j >= 0) {
      if (++k[j] < grid.M) break;
      k[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
}

}  // namespace

std::vector<double> weight_on_grid(const Params& p, const QuadGrid& grid, const QPochConfig& cfg) {
  require_quadrature_dim(grid, p);
  const int M = grid.M;
  const double step = 2.0 * std::numbers::pi / M;

  // The node phases exp(-i alpha theta_k) = -exp(-i(k+1/2)step) lie on a
  // shifted M-th-root lattice, so every d_v argument is a power of
  // omega = exp(-i step) and every d_w argument is one of the M node phases.
  std::vector<cplx> dv_table(M), dw_table(M);
  for (int s = 0; s < M; ++s) {
    const cplx omega_s = std::exp(cplx(0.0, -step * s));
    dv_table[s] = weight_dv(omega_s, p, cfg);
  }
  for (int k = 0; k < M; ++k) {
    const cplx v_k = -std::exp(cplx(0.0, -(k + 0.5) * step));
    dw_table[k] = weight_dw(v_k, p, cfg);
  }

  std::vector<double> w;
  w.reserve(grid.node_count());
  for_each_node(grid, [&](const std::vector<int>& k) {
    double val = 1.0;
    for (int j = 0; j < grid.n; ++j) {
      for (int l = j + 1; l < grid.n; ++l) {
        val *= std::norm(dv_table[(k[j] + k[l] + 1) % M]);
        val *= std::norm(dv_table[((k[j] - k[l]) % M + M) % M]);
      }
      val *= std::norm(dw_table[k[j]]);
    }
    w.push_back(val);
  });
  return w;
}

std::vector<double> monomial_values_on_grid(const Partition& lam, const Params& p,
                                            const QuadGrid& grid) {
  require_quadrature_dim(grid, p);
  const int M = grid.M;
  const double step = 2.0 * std::numbers::pi / M;
  const int D = lam.size() ? lam[0] : 0;

  // phase powers exp(i alpha theta_k d) for d = -D..D
  std::vector<std::vector<cplx>> pw(2 * D + 1, std::vector<cplx>(M));
  for (int k = 0; k < M; ++k) {
    const cplx base = -std::exp(cplx(0.0, (k + 0.5) * step));  // exp(i alpha theta_k)
    cplx acc = 1.0;
    pw[D][k] = 1.0;
    for (int d = 1; d <= D; ++d) {
      acc *= base;
      pw[D + d][k] = acc;
      pw[D - d][k] = std::conj(acc);
    }
  }

  std::vector<std::vector<int>> orbit;
  for_each_orbit_vector(lam, [&](const std::vector<int>& v) { orbit.push_back(v); });

  std::vector<double> out;
  out.reserve(grid.node_count());
  for_each_node(grid, [&](const std::vector<int>& k) {
    cplx sum = 0.0;
    for (const auto& v : orbit) {
      cplx prod = 1.0;
      for (int j = 0; j < grid.n; ++j) prod *= pw[D + v[j]][k[j]];
      sum += prod;
    }
    out.push_back(sum.real());
  });
  return out;
}

std::vector<cplx> sympoly_values_on_grid(const SymPoly& f, const Params& p, const QuadGrid& grid) {
  std::vector<cplx> out(grid.node_count(), cplx(0.0));
  for (const auto& [lam, c] : f.coeffs) {
    const auto mv = monomial_values_on_grid(lam, p, grid);
    for (size_t i = 0; i < out.size(); ++i) out[i] += c * mv[i];
  }
  return out;
}

cplx inner_product_with_weights(const SymPoly& f, const SymPoly& h, const Params& p,
                                const QuadGrid& grid, const std::vector<double>& weights) {
  require_quadrature_dim(grid, p);
  if (weights.size() != grid.node_count())
    throw InvalidParameterError("inner_product: weight vector size mismatch");
  const auto fv = sympoly_values_on_grid(f, p, grid);
  const auto hv = sympoly_values_on_grid(h, p, grid);
  cplx sum = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) sum += fv[i] * std::conj(hv[i]) * weights[i];
  return sum / static_cast<double>(grid.node_count());
}

cplx inner_product(const SymPoly& f, const SymPoly& h, const Params& p, const QuadGrid& grid,
                   const QPochConfig& cfg) {
  return inner_product_with_weights(f, h, p, grid, weight_on_grid(p, grid, cfg));
}

Eigen::MatrixXd monomial_gram(const std::vector<Partition>& basis, const Params& p,
                              const QuadGrid& grid, const QPochConfig& cfg) {
  require_quadrature_dim(grid, p);
  const auto w = weight_on_grid(p, grid, cfg);
  const int B = static_cast<int>(basis.size());
  std::vector<std::vector<double>> vals(B);
  for (int i = 0; i < B; ++i) vals[i] = monomial_values_on_grid(basis[i], p, grid);
  Eigen::MatrixXd G(B, B);
  const double inv_nodes = 1.0 / static_cast<double>(grid.node_count());
  for (int i = 0; i < B; ++i) {
    for (int j = i; j < B; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < w.size(); ++t) s += vals[i][t] * vals[j][t] * w[t];
      G(i, j) = G(j, i) = s * inv_nodes;
    }
  }
  return G;
}

}  // namespace km
