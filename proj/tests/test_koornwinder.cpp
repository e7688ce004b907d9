#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "km/koornwinder.hpp"

using namespace km;

namespace {

Params generic_params(int n) { return make_params(n, 1.0, 1.0, 0.7, 1.9, 0.8, 0.6, 0.5); }
Params weak_params(int n) { return make_params(n, 1.0, 1.0, 0.45, 1.35, 0.5, 0.45, 0.4); }

RealVec rho_plus(const Params& p, const Partition& lam) {
  RealVec y = p.rho();
  for (int j = 0; j < p.n; ++j) y[j] += lam[j];
  return y;
}

}  // namespace

TEST_CASE("degree zero is the constant one on both routes") {
  const Params p = generic_params(2);
  const auto op = build_operator(Partition::zero(2), p);
  CHECK(op.coeffs.coeffs.size() == 1);
  CHECK(op.coeffs.is_monic_at(Partition::zero(2)));
  const auto gs = build_gram_schmidt(Partition::zero(2), p, QuadGrid{2, 32});
  CHECK(gs.coeffs.coeffs.size() == 1);
  CHECK(gs.coeffs.is_monic_at(Partition::zero(2)));
}

TEST_CASE("trivial weight keeps the monomials (Fourier case)") {
  const Params p0 = make_params(1, 1.0, 1.0, 0, 0, 0, 0, 0);
  for (int l = 1; l <= 4; ++l) {
    const Partition lam({l});
    const auto op = build_operator(lam, p0);
    const auto gs = build_gram_schmidt(lam, p0, QuadGrid{1, 32});
    for (const Partition& mu : down_set(lam)) {
      const cplx expect = mu == lam ? cplx(1.0) : cplx(0.0);
      CHECK(std::abs(op.coeffs.coeff(mu) - expect) < 1e-10);
      CHECK(std::abs(gs.coeffs.coeff(mu) - expect) < 1e-10);
    }
  }
}

TEST_CASE("operator route yields joint eigenfunctions") {
  const Params p = generic_params(2);
  const Partition lam({2, 1});
  const auto poly = build_operator(lam, p);
  CHECK(poly.coeffs.is_monic_at(lam));
  std::mt19937_64 rng(97);
  for (int r = 1; r <= 2; ++r) {
    const double ev = eigen_er(r, rho_plus(p, lam), p);
    for (int t = 0; t < 6; ++t) {
      const ComplexVec x = draw_generic_points(2, 1, rng)[0];
      const cplx dr =
          apply_difference_op(r, [&](const ComplexVec& y) { return poly.eval(y); }, x, p);
      const cplx scaled = ev * poly.eval(x);
      const double scale = std::max({std::abs(dr), std::abs(scaled), 1.0});
      CHECK(std::abs(dr - scaled) < 1e-7 * scale);
    }
  }
}

TEST_CASE("operator-route polynomials are orthogonal for incomparable pairs") {
  // continuum orthogonality measured with a grid fine enough to resolve the
  // weight's Fourier tail; (2,0) and (1,1) are incomparable with (2,1),(3,0)
  const Params p = weak_params(2);
  const QuadGrid grid{2, 64};
  const auto weights = weight_on_grid(p, grid);
  const auto basis = partitions_up_to_weight(2, 3);
  std::vector<SymPoly> polys;
  for (const Partition& lam : basis) polys.push_back(build_operator(lam, p).coeffs);
  std::vector<std::vector<cplx>> vals;
  for (const SymPoly& f : polys) vals.push_back(sympoly_values_on_grid(f, p, grid));
  auto ip = [&](size_t i, size_t j) {
    cplx s = 0.0;
    for (size_t t = 0; t < weights.size(); ++t) s += vals[i][t] * std::conj(vals[j][t]) * weights[t];
    return s / static_cast<double>(grid.node_count());
  };
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      const double norm = std::sqrt(ip(i, i).real() * ip(j, j).real());
      CHECK(std::abs(ip(i, j)) < 1e-9 * norm);
    }
  }
}

TEST_CASE("construction routes agree coefficientwise") {
  const Params p = weak_params(2);
  const Partition lam({2, 1});
  const auto op = build_operator(lam, p);
  const auto gs = build_gram_schmidt(lam, p, QuadGrid{2, 64});
  for (const Partition& mu : down_set(lam)) {
    const cplx a = op.coeffs.coeff(mu), b = gs.coeffs.coeff(mu);
    CHECK(std::abs(a - b) < 1e-7 * std::max({std::abs(a), std::abs(b), 1.0}));
  }
}

TEST_CASE("normalized evaluation is one at the dual point") {
  const Params p = generic_params(2);
  for (const Partition& lam : {Partition::zero(2), Partition({1, 0}), Partition({2, 1})}) {
    const auto np = normalized(lam, p);
    CHECK(np.eval(p.rho_dual()) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(np.denominator > 0.0);
  }
  // degree zero normalizes to the constant one everywhere
  const auto n0 = normalized(Partition::zero(2), p);
  CHECK(n0.eval(RealVec{0.31, 0.17}) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("principal specialization matches the half-weight ratio") {
  for (int n : {1, 2, 3}) {
    const Params p = generic_params(n);
    PolynomialTable table(p);
    for (const Partition& lam : partitions_up_to_weight(n, 3)) {
      const double direct = table.normalized_poly(lam).denominator;
      const double closed = evaluation_constant(lam, p);
      CHECK(closed > 0.0);
      CHECK(direct == doctest::Approx(closed).epsilon(1e-7));
    }
  }
  CHECK(evaluation_constant(Partition::zero(2), generic_params(2)) == 1.0);
}

TEST_CASE("norm closed form matches quadrature") {
  const Params p1 = generic_params(1);
  for (int l = 0; l <= 3; ++l) {
    const double quad = norm_quadrature(Partition({l}), p1, QuadGrid{1, 48});
    const double closed = norm_closed_form(Partition({l}), p1);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-7));
  }
  const Params p2 = weak_params(2);
  const double quad = norm_quadrature(Partition({1, 1}), p2, QuadGrid{2, 48});
  const double closed = norm_closed_form(Partition({1, 1}), p2);
  CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("gustafson constant") {
  // trivial weight integrates to one, including the t -> 1 degenerate pair
  for (int n : {1, 2, 3}) {
    const Params p0 = make_params(n, 1.0, 1.0, 0, 0, 0, 0, 0);
    CHECK(gustafson_constant(p0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // n=1: direct quadrature of the Askey-Wilson mass
  const Params p1 = generic_params(1);
  SymPoly one;
  one.add(Partition::zero(1), 1.0);
  const double quad = inner_product(one, one, p1, QuadGrid{1, 48}).real();
  CHECK(gustafson_constant(p1) == doctest::Approx(quad).epsilon(1e-9));

  // the half-weight factorization on the self-dual hyperplane
  for (int n : {1, 2, 3}) {
    const Params p = weak_params(n);
    const double prod = gustafson_constant(p);
    const double fact = norm_closed_form(Partition::zero(n), p);
    CHECK(prod == doctest::Approx(fact).epsilon(1e-8));
  }
}

TEST_CASE("gustafson product is continuous through the degenerate coupling limit") {
  // t -> 1 is cancelled algebraically, so the product can be evaluated at
  // g = 0 directly; Richardson extrapolation from small g must agree.
  // (Quadrature is no oracle here: for tiny g the weight has a dip of width
  // ~g around coinciding angles that no desk-scale grid resolves.)
  auto at = [](double g) { return gustafson_constant(make_params(2, 1, 1, g, 0, 0, 0, 0)); };
  const double e1 = at(1e-4), e2 = at(5e-5);
  const double extrapolated = 2.0 * e2 - e1;
  CHECK(extrapolated == doctest::Approx(at(0.0)).epsilon(1e-7));
  CHECK(at(0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("small off-hyperplane total mass still matches quadrature") {
  const Params p = make_params(2, 1.0, 1.0, 0.6, 1.1, 0.5, 0.3, 0.1);
  SymPoly one;
  one.add(Partition::zero(2), 1.0);
  const double quad = inner_product(one, one, p, QuadGrid{2, 48}).real();
  CHECK(gustafson_constant(p) == doctest::Approx(quad).epsilon(1e-8));
}

TEST_CASE("recurrence holds pointwise") {
  std::mt19937_64 rng(101);
  for (int n : {1, 2}) {
    const Params p = generic_params(n);
    PolynomialTable table(p);
    for (const Partition& lam : partitions_up_to_weight(n, 2)) {
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t < 4; ++t) {
          RealVec x(n);
          for (int j = 0; j < n; ++j) x[j] = draw_generic_points(1, 1, rng)[0][0].real();
          const PieriEval pe = pieri_check(r, lam, x, table);
          CHECK(std::abs(pe.lhs - pe.rhs) < 1e-6 * pe.scale);
          // pieri_rhs is the same sum, and insists on a matching table
          CHECK(std::abs(pieri_rhs(r, lam, x, p, table) - pe.rhs) < 1e-12 * pe.scale);
          CHECK_THROWS_AS(pieri_rhs(r, lam, x, dual(p), table), InvalidParameterError);
        }
      }
    }
  }
}

TEST_CASE("integer parameters exercise the cancellation-aware coefficients") {
  const Params p = make_params(2, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0);
  PolynomialTable table(p);
  std::mt19937_64 rng(103);
  for (const Partition& lam : partitions_up_to_weight(2, 2)) {
    for (int r = 1; r <= 2; ++r) {
      const RealVec x = {1.37 + 0.1 * (rng() % 7), 0.53 + 0.1 * (rng() % 5)};
      const PieriEval pe = pieri_check(r, lam, x, table);
      CHECK(std::abs(pe.lhs - pe.rhs) < 1e-6 * pe.scale);
    }
  }
}

TEST_CASE("phi43 matches the normalized one-variable polynomial") {
  CHECK(phi43(0, 0.9, generic_params(1)) == 1.0);
  for (const Params& p : {generic_params(1), make_params(1, 1.0, 1.0, 0.6, 1.1, 0.5, 0.3, 0.1)}) {
    PolynomialTable table(p);
    std::mt19937_64 rng(107);
    for (int l = 0; l <= 4; ++l) {
      for (int t = 0; t < 4; ++t) {
        const double x = draw_generic_points(1, 1, rng)[0][0].real();
        const double a = table.normalized_poly(Partition({l})).eval(RealVec{x});
        const double b = phi43(l, x, p);
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS(phi43(1, 0.5, generic_params(2)), InvalidParameterError);
  // vanishing lower parameter: g0+g2+1/2 = 0 makes (q^{g0+g2+1/2};q)_k collapse
  CHECK_THROWS_AS(phi43(2, 0.4, make_params(1, 1, 1, 0.0, -0.5, 0.2, 0.0, 0.1)),
                  InvalidParameterError);
}

TEST_CASE("one-variable duality holds off the hyperplane") {
  const Params p = make_params(1, 1.0, 1.0, 0.0, 1.1, 0.5, 0.3, 0.1);
  REQUIRE_FALSE(is_self_dual(p));
  PolynomialTable table(p), table_dual(dual(p));
  const double g0s = dual(p).g0;
  for (int l = 0; l <= 3; ++l) {
    for (int m = 0; m <= 3; ++m) {
      const double a = table.normalized_poly(Partition({l})).eval(RealVec{p.g0 + m});
      const double b = table_dual.normalized_poly(Partition({m})).eval(RealVec{g0s + l});
      CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
  }
}

TEST_CASE("unequal scale factors thread through every formula") {
  // alpha != beta exercises the bookkeeping that collapses at alpha = beta = 1:
  // the dual swaps the scales, the plain kernel couples beta*g against
  // alpha/2, and the normalized evaluation rescales its argument by beta
  const Params p = make_params(2, 0.8, 1.4, 0.7, 1.9, 0.8, 0.6, 0.5);
  PolynomialTable table(p), table_dual(dual(p));

  SUBCASE("difference equation") {
    const Partition lam({2, 1});
    const KMPolynomial& poly = table.operator_poly(lam);
    RealVec y = p.rho();
    y[0] += lam[0];
    y[1] += lam[1];
    std::mt19937_64 rng(113);
    for (int r = 1; r <= 2; ++r) {
      const double ev = eigen_er(r, y, p);
      const ComplexVec x = draw_generic_points(2, 1, rng)[0];
      const cplx dr = apply_difference_op(r, [&](const ComplexVec& z) { return poly.eval(z); }, x, p);
      const cplx want = ev * poly.eval(x);
      CHECK(std::abs(dr - want) < 1e-8 * std::max({std::abs(dr), std::abs(want), 1.0}));
    }
  }

  SUBCASE("evaluation formula") {
    for (const Partition& lam : partitions_up_to_weight(2, 3)) {
      const double direct = table.normalized_poly(lam).denominator;
      const double closed = evaluation_constant(lam, p);
      CHECK(direct == doctest::Approx(closed).epsilon(1e-8));
    }
  }

  SUBCASE("duality") {
    const RealVec rho = p.rho();
    const RealVec rho_star = dual(p).rho();
    for (const Partition& lam : partitions_up_to_weight(2, 3)) {
      for (const Partition& mu : partitions_up_to_weight(2, 3)) {
        RealVec xl = rho_star, xr = rho;
        for (int j = 0; j < 2; ++j) {
          xl[j] += mu[j];
          xr[j] += lam[j];
        }
        const double a = table.normalized_poly(lam).eval(xl);
        const double b = table_dual.normalized_poly(mu).eval(xr);
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
      }
    }
  }

  SUBCASE("norm formula against quadrature") {
    const double quad = norm_quadrature(Partition({1, 1}), p, QuadGrid{2, 48});
    const double closed = norm_closed_form(Partition({1, 1}), p);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-7));
  }

  SUBCASE("recurrence") {
    std::mt19937_64 rng(127);
    for (int r = 1; r <= 2; ++r) {
      const RealVec x = {draw_generic_points(1, 1, rng)[0][0].real(),
                         draw_generic_points(1, 1, rng)[0][0].real() * 0.43};
      const PieriEval pe = pieri_check(r, Partition({1, 0}), x, table);
      CHECK(std::abs(pe.lhs - pe.rhs) < 1e-8 * pe.scale);
    }
  }
}

TEST_CASE("operator route works at n = 4 where quadrature does not") {
  const Params p = make_params(4, 1.0, 1.0, 0.7, 1.9, 0.8, 0.6, 0.5);
  PolynomialTable table(p);
  std::mt19937_64 rng(131);
  for (const Partition& lam : {Partition({1, 1, 0, 0}), Partition({2, 1, 0, 0})}) {
    const KMPolynomial& poly = table.operator_poly(lam);
    CHECK(poly.coeffs.is_monic_at(lam));
    RealVec y = p.rho();
    for (int j = 0; j < 4; ++j) y[j] += lam[j];
    for (int r : {1, 2}) {
      const double ev = eigen_er(r, y, p);
      const ComplexVec x = draw_generic_points(4, 1, rng)[0];
      const cplx dr = apply_difference_op(r, [&](const ComplexVec& z) { return poly.eval(z); }, x, p);
      const cplx want = ev * poly.eval(x);
      CHECK(std::abs(dr - want) < 1e-7 * std::max({std::abs(dr), std::abs(want), 1.0}));
    }
    // evaluation formula through the half weights, no grid involved
    const double direct = table.normalized_poly(lam).denominator;
    CHECK(direct == doctest::Approx(evaluation_constant(lam, p)).epsilon(1e-7));
  }
}

TEST_CASE("eigenvalue collisions at non-generic couplings are reported") {
  // rho = -3/2 puts ch(rho+1) = ch(rho+2), colliding the degree-1 and
  // degree-2 eigenvalues
  const Params p = make_params(1, 1.0, 1.0, 0.0, -3.0, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(build_operator(Partition({2}), p), DegenerateSpectrumError);
}

TEST_CASE("duality on the self-dual hyperplane (small case)") {
  const Params p = weak_params(2);
  PolynomialTable table(p), table_dual(dual(p));
  const RealVec rho = p.rho();
  const RealVec rho_star = dual(p).rho();
  for (const Partition& lam : partitions_up_to_weight(2, 2)) {
    for (const Partition& mu : partitions_up_to_weight(2, 2)) {
      RealVec xl = rho_star, xr = rho;
      for (int j = 0; j < 2; ++j) {
        xl[j] += mu[j];
        xr[j] += lam[j];
      }
      const double a = table.normalized_poly(lam).eval(xl);
      const double b = table_dual.normalized_poly(mu).eval(xr);
      CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
  }
}
