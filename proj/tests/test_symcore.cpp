#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "km/symcore.hpp"

using namespace km;

namespace {

Params generic_params(int n) { return make_params(n, 1.0, 1.0, 0.7, 1.9, 0.8, 0.6, 0.5); }

SymPoly monomial(const Partition& lam) {
  SymPoly f;
  f.add(lam, 1.0);
  return f;
}

}  // namespace

TEST_CASE("monomial evaluation basics") {
  const Params p1 = make_params(1, 1.0, 1.0, 0, 0, 0, 0, 0);
  CHECK(eval_monomial(Partition::zero(1), RealVec{0.77}, p1) == 1.0);
  const double x = 0.31;
  CHECK(eval_monomial(Partition({1}), RealVec{x}, p1) ==
        doctest::Approx(2.0 * std::cosh(x)).epsilon(1e-15));

  const Params p2 = make_params(2, 1.0, 1.0, 0, 0, 0, 0, 0);
  CHECK(eval_monomial(Partition({2, 1}), RealVec{0.0, 0.0}, p2) == 8.0);
  CHECK(eval_monomial(Partition({1, 0}), RealVec{0.0, 0.0}, p2) == 4.0);
  CHECK(eval_monomial(Partition({1, 1}), RealVec{0.0, 0.0}, p2) == 4.0);
}

TEST_CASE("monomials are invariant under signed permutations") {
  const Params p = generic_params(3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dx(-1.2, 1.2);
  for (int t = 0; t < 25; ++t) {
    const Partition lam({3, 1, 1});
    ComplexVec x = {cplx(dx(rng), dx(rng)), cplx(dx(rng), dx(rng)), cplx(dx(rng), dx(rng))};
    const cplx base = eval_monomial(lam, x, p);
    ComplexVec perm = {x[2], x[0], x[1]};
    ComplexVec flip = {x[0], -x[1], x[2]};
    CHECK(std::abs(eval_monomial(lam, perm, p) - base) <= 1e-12 * std::abs(base));
    CHECK(std::abs(eval_monomial(lam, flip, p) - base) <= 1e-12 * std::abs(base));
  }
}

TEST_CASE("sympoly evaluation") {
  const Params p = make_params(2, 1.0, 1.0, 0, 0, 0, 0, 0);
  const ComplexVec zero = {cplx(0.0), cplx(0.0)};
  CHECK(eval_sympoly(SymPoly{}, zero, p) == cplx(0.0));
  CHECK(eval_sympoly(monomial(Partition::zero(2)), zero, p) == cplx(1.0));
  SymPoly f;
  f.add(Partition({1, 0}), 2.0);
  CHECK(eval_sympoly(f, zero, p) == cplx(8.0));
}

TEST_CASE("expand_from_samples recovers exact expansions") {
  const Params p = generic_params(2);
  const auto basis = partitions_up_to_weight(2, 3);

  SUBCASE("single monomial") {
    const Partition lam({2, 1});
    const auto got = expand_from_samples(
        [&](const ComplexVec& x) { return eval_monomial(lam, x, p); }, basis, p);
    CHECK(got.fit_residual < 1e-12);
    CHECK(std::abs(got.coeff(lam) - cplx(1.0)) < 1e-10);
    for (const auto& [mu, c] : got.coeffs)
      if (mu != lam) CHECK(std::abs(c) < 1e-10);
  }

  SUBCASE("linear combination") {
    const Partition mu({3, 0}), nu({1, 1});
    const auto got = expand_from_samples(
        [&](const ComplexVec& x) {
          return 3.0 * eval_monomial(mu, x, p) + 2.0 * eval_monomial(nu, x, p);
        },
        basis, p);
    CHECK(std::abs(got.coeff(mu) - cplx(3.0)) < 1e-9);
    CHECK(std::abs(got.coeff(nu) - cplx(2.0)) < 1e-9);
  }
}

TEST_CASE("expand round-trips random sympolys") {
  const Params p = generic_params(2);
  const auto basis = partitions_up_to_weight(2, 4);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> dc(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    SymPoly f;
    for (const Partition& mu : basis) f.add(mu, cplx(dc(rng), dc(rng)));
    const auto got = expand_from_samples(
        [&](const ComplexVec& x) { return eval_sympoly(f, x, p); }, basis, p);
    for (const Partition& mu : basis) CHECK(std::abs(got.coeff(mu) - f.coeff(mu)) < 1e-10);
  }
}

TEST_CASE("expand rejects functions outside the span") {
  const Params p = generic_params(2);
  const std::vector<Partition> small = {Partition({0, 0}), Partition({1, 0}), Partition({1, 1})};
  CHECK_THROWS_AS(expand_from_samples(
                      [&](const ComplexVec& x) { return eval_monomial(Partition({2, 0}), x, p); },
                      small, p),
                  NotInSpanError);
}

TEST_CASE("quadrature with trivial weight reproduces Fourier orthogonality") {
  const Params p = make_params(1, 1.0, 1.0, 0, 0, 0, 0, 0);
  const QuadGrid grid{1, 32};
  CHECK(inner_product(monomial(Partition({0})), monomial(Partition({0})), p, grid).real() ==
        doctest::Approx(1.0).epsilon(1e-13));
  for (int l = 1; l <= 4; ++l) {
    const auto ml = monomial(Partition({l}));
    CHECK(inner_product(ml, ml, p, grid).real() == doctest::Approx(2.0).epsilon(1e-12));
    for (int k = 0; k < l; ++k) {
      const auto mk = monomial(Partition({k}));
      CHECK(std::abs(inner_product(ml, mk, p, grid)) < 1e-13);
    }
  }
}

TEST_CASE("grid weight equals the direct weight at sampled nodes") {
  const Params p = generic_params(2);
  const QuadGrid grid{2, 12};
  const auto w = weight_on_grid(p, grid);
  const double pi = std::acos(-1.0);
  for (int k1 : {0, 3, 7}) {
    for (int k2 : {1, 5, 11}) {
      const double t1 = -pi / p.alpha + (k1 + 0.5) * 2.0 * pi / (p.alpha * grid.M);
      const double t2 = -pi / p.alpha + (k2 + 0.5) * 2.0 * pi / (p.alpha * grid.M);
      const cplx direct = weight_delta({cplx(0, t1), cplx(0, t2)}, p);
      const double table = w[k1 * grid.M + k2];
      CHECK(table == doctest::Approx(direct.real()).epsilon(1e-11));
      CHECK(std::abs(direct.imag()) < 1e-11 * std::abs(direct));
    }
  }
}

TEST_CASE("monomial grid values match pointwise evaluation") {
  const Params p = generic_params(2);
  const QuadGrid grid{2, 8};
  const Partition lam({2, 1});
  const auto vals = monomial_values_on_grid(lam, p, grid);
  const double pi = std::acos(-1.0);
  for (int k1 : {0, 2, 6}) {
    for (int k2 : {1, 4, 7}) {
      const double t1 = -pi + (k1 + 0.5) * 2.0 * pi / grid.M;
      const double t2 = -pi + (k2 + 0.5) * 2.0 * pi / grid.M;
      const cplx direct = eval_monomial(lam, ComplexVec{cplx(0, t1), cplx(0, t2)}, p);
      CHECK(vals[k1 * grid.M + k2] == doctest::Approx(direct.real()).epsilon(1e-12));
      CHECK(std::abs(direct.imag()) < 1e-12);
    }
  }
}

TEST_CASE("inner products are hermitian and converge in M") {
  const Params p = generic_params(2);
  const auto f = monomial(Partition({2, 0}));
  const auto h = monomial(Partition({1, 1}));
  const cplx a = inner_product(f, h, p, QuadGrid{2, 32});
  const cplx b = inner_product(h, f, p, QuadGrid{2, 32});
  CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::abs(a));
  CHECK(std::abs(a.imag()) < 1e-12 * std::abs(a));

  // spectral convergence: the mode-truncation error decays like q^{c M}, so
  // doubling from the production grid leaves no visible change
  const cplx base = inner_product(f, h, p, QuadGrid{2, 48});
  const cplx fine = inner_product(f, h, p, QuadGrid{2, 96});
  CHECK(std::abs(base - fine) < 1e-9 * std::max(1.0, std::abs(fine)));
}

TEST_CASE("quadrature guards its domain") {
  const Params p = generic_params(2);
  CHECK_THROWS_AS(weight_on_grid(p, QuadGrid{3, 8}), InvalidParameterError);
  const Params p4 = generic_params(4);
  CHECK_THROWS_AS(weight_on_grid(p4, QuadGrid{4, 8}), InvalidParameterError);
  CHECK(default_grid_points(0) == 32);
  CHECK(default_grid_points(8) == 48);
}
