#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "km/params.hpp"

using namespace km;

TEST_CASE("make_params populates derived fields") {
  const Params p = make_params(1, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
  CHECK(p.q() == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(p.rho() == RealVec{0.0});

  const Params p3 = make_params(3, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0);
  CHECK(p3.rho() == RealVec{5.0, 4.0, 3.0});
}

TEST_CASE("make_params rejects bad input") {
  CHECK_THROWS_AS(make_params(0, 1, 1, 0, 0, 0, 0, 0), InvalidParameterError);
  CHECK_THROWS_AS(make_params(1, 0.0, 1, 0, 0, 0, 0, 0), InvalidParameterError);
  CHECK_THROWS_AS(make_params(1, 1, -2.0, 0, 0, 0, 0, 0), InvalidParameterError);
}

TEST_CASE("letters match an independent evaluation") {
  const Params p = make_params(1, 0.9, 1.3, 0.45, 0.8, 0.35, 0.6, 0.2);
  const double q = std::exp(-0.9 * 1.3);
  const auto L = p.letters();
  CHECK(L.t == doctest::Approx(std::pow(q, 0.45)).epsilon(1e-14));
  CHECK(L.a == doctest::Approx(std::pow(q, 0.8)).epsilon(1e-14));
  CHECK(L.b == doctest::Approx(-std::pow(q, 0.35)).epsilon(1e-14));
  CHECK(L.c == doctest::Approx(std::pow(q, 1.1)).epsilon(1e-14));
  CHECK(L.d == doctest::Approx(-std::pow(q, 0.7)).epsilon(1e-14));
}

TEST_CASE("dual maps the couplings by the half-Hadamard matrix") {
  const Params p = make_params(2, 1.0, 1.0, 0.5, 1.0, 0.0, 0.0, 0.0);
  const DualParams d = dual(p);
  CHECK(d.g0 == 0.5);
  CHECK(d.g1 == 0.5);
  CHECK(d.g2 == 0.5);
  CHECK(d.g3 == 0.5);
  CHECK(d.alpha == p.beta);
  CHECK(d.beta == p.alpha);
  CHECK(d.g == p.g);
  CHECK(d.q() == p.q());
}

TEST_CASE("self-dual couplings are a fixed point of dual") {
  const Params p = make_params(2, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0);
  REQUIRE(is_self_dual(p));
  const DualParams d = dual(p);
  CHECK(d.g0 == p.g0);
  CHECK(d.g1 == p.g1);
  CHECK(d.g2 == p.g2);
  CHECK(d.g3 == p.g3);
  CHECK(d.rho() == p.rho());
}

TEST_CASE("is_self_dual examples") {
  CHECK(is_self_dual(make_params(1, 1, 1, 0, 3.0, 1.0, 1.0, 1.0)));
  CHECK_FALSE(is_self_dual(make_params(1, 1, 1, 0, 1.0, 0.0, 0.0, 0.0)));
}

// Random couplings on a dyadic lattice: every sum and halving in the dual map
// is then exact in binary floating point, so the involution and the
// self-dual fixed point can be tested for bit-exact equality.
TEST_CASE("dual is an involution (randomized dyadic couplings)") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> lattice(-64, 128);
  for (int trial = 0; trial < 500; ++trial) {
    const double g0 = lattice(rng) / 16.0, g1 = lattice(rng) / 16.0;
    const double g2 = lattice(rng) / 16.0, g3 = lattice(rng) / 16.0;
    const Params p = make_params(3, 0.8, 1.25, lattice(rng) / 16.0, g0, g1, g2, g3);
    const Params pp = dual(dual(p));
    CHECK(pp == p);
  }
}

TEST_CASE("self-dual fixed point (randomized dyadic couplings)") {
  std::mt19937_64 rng(2025);
  std::uniform_int_distribution<int> lattice(0, 32);
  for (int trial = 0; trial < 200; ++trial) {
    const double g1 = lattice(rng) / 16.0, g2 = lattice(rng) / 16.0, g3 = lattice(rng) / 16.0;
    const Params p = make_params(2, 1.0, 1.0, lattice(rng) / 16.0, g1 + g2 + g3, g1, g2, g3);
    REQUIRE(is_self_dual(p));
    const DualParams d = dual(p);
    CHECK(d.g0 == p.g0);
    CHECK(d.g1 == p.g1);
    CHECK(d.g2 == p.g2);
    CHECK(d.g3 == p.g3);
    CHECK(d.rho() == p.rho());
  }
}

TEST_CASE("n=1: rho is the dual g0 and vice versa") {
  const Params p = make_params(1, 1.0, 1.4, 0.3, 1.1, 0.5, 0.3, 0.1);
  CHECK(p.rho()[0] == dual(p).g0);
  CHECK(p.rho_dual()[0] == p.g0);
}
