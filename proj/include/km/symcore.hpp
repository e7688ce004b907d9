#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <random>

#include "km/common.hpp"
#include "km/params.hpp"
#include "km/partitions.hpp"
#include "km/qseries.hpp"

namespace km {

/// A W-invariant Laurent polynomial written in the monomial basis:
/// f(x) = sum_lam coeffs[lam] * m_lam(x).
struct SymPoly {
  std::map<Partition, cplx> coeffs;
  double fit_residual = 0.0;  // attached by expand_from_samples

  SymPoly& add(const Partition& lam, cplx c) {
    coeffs[lam] += c;
    return *this;
  }
  cplx coeff(const Partition& lam) const {
    auto it = coeffs.find(lam);
    return it == coeffs.end() ? cplx(0.0) : it->second;
  }
  bool is_monic_at(const Partition& lam) const { return coeff(lam) == cplx(1.0); }
};

/// Midpoint grid on (-pi/alpha, pi/alpha]^n with M points per dimension;
/// node weight M^{-n} (total weight one).
struct QuadGrid {
  int n = 1;
  int M = 32;
  size_t node_count() const {
    size_t c = 1;
    for (int j = 0; j < n; ++j) c *= static_cast<size_t>(M);
    return c;
  }
};

/// Default points per dimension for integrands of the given polynomial degree.
int default_grid_points(int max_degree);

/// Orbit sum over signed permutations: sum_{lam' in W lam} exp(alpha lam'.x).
cplx eval_monomial(const Partition& lam, const ComplexVec& x, const Params& p);
double eval_monomial(const Partition& lam, const RealVec& x, const Params& p);

cplx eval_sympoly(const SymPoly& f, const ComplexVec& x, const Params& p);

/// Visit every distinct signed permutation of lam's parts.
void for_each_orbit_vector(const Partition& lam, const std::function<void(const std::vector<int>&)>& fn);

struct ExpandConfig {
  double tol = 1e-8;          // relative fit residual demanded of the least-squares solve
  int oversample = 2;         // samples = oversample * |basis| (at least |basis| + 4)
  std::uint64_t seed = 123456789;
};

/// Deterministic generic evaluation points on a fixed incommensurate ray with
/// per-coordinate jitter; callers redraw through the same generator when a
/// point trips a pole guard.
std::vector<ComplexVec> draw_generic_points(int n, int count, std::mt19937_64& rng);

/// Expansion sample points: a small fixed real offset (keeps every sh/ch
/// denominator away from its zeros) plus a random imaginary part covering the
/// torus period.  The oscillation keeps the monomial sample matrix
/// well-conditioned, unlike points on a real ray.
std::vector<ComplexVec> draw_expansion_points(int n, double alpha, int count,
                                              std::mt19937_64& rng);

/// Recover monomial-basis coefficients of a sampled function by a
/// least-squares solve over deterministic generic points.  Retries once with
/// twice the samples, then throws NotInSpanError carrying the residual.
SymPoly expand_from_samples(const std::function<cplx(const ComplexVec&)>& f,
                            const std::vector<Partition>& basis, const Params& p,
                            const ExpandConfig& cfg = {});

/// Weight values on all grid nodes (row-major, first coordinate slowest).
/// Real and nonnegative by construction on the imaginary-axis grid.
std::vector<double> weight_on_grid(const Params& p, const QuadGrid& grid,
                                   const QPochConfig& cfg = {});

/// m_lam(i theta) over all grid nodes (real: the orbit is closed under
/// the global sign flip).
std::vector<double> monomial_values_on_grid(const Partition& lam, const Params& p,
                                            const QuadGrid& grid);

std::vector<cplx> sympoly_values_on_grid(const SymPoly& f, const Params& p, const QuadGrid& grid);

/// Quadrature inner product <f,h> = M^{-n} sum f(i theta) conj(h(i theta)) Delta(i theta).
cplx inner_product(const SymPoly& f, const SymPoly& h, const Params& p, const QuadGrid& grid,
                   const QPochConfig& cfg = {});
cplx inner_product_with_weights(const SymPoly& f, const SymPoly& h, const Params& p,
                                const QuadGrid& grid, const std::vector<double>& weights);

/// Gram matrix of monomials under the weight; real symmetric on this grid.
Eigen::MatrixXd monomial_gram(const std::vector<Partition>& basis, const Params& p,
                              const QuadGrid& grid, const QPochConfig& cfg = {});

}  // namespace km
