#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kgspec/core.hpp"
#include "kgspec/errors.hpp"

using namespace kgspec;

TEST_CASE("effective angular momentum") {
  CHECK(effective_angular_momentum(1, 2.0, DefectGeometry::from_chi(0.5), Couplings{}) == 0.0);
  CHECK(effective_angular_momentum(0, 0.0, DefectGeometry::minkowski(), Couplings{}) == 0.0);
  const auto coup = Couplings::with_flux_ratio(0.25);
  CHECK(coup.flux_ratio() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(effective_angular_momentum(0, 1.0, DefectGeometry::from_chi(0.5), coup) ==
        doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("effective angular momentum is affine and flux-periodic") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> real(-3.0, 3.0);
  std::uniform_int_distribution<int> integer(-6, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const int l = integer(rng);
    const double k = real(rng), chi = real(rng), t = real(rng), q = 0.5 + std::abs(real(rng));
    const auto geom = DefectGeometry::from_chi(chi);
    const double s = effective_angular_momentum(l, k, geom, Couplings::with_flux_ratio(t, q));
    CHECK(std::abs(s - (l - chi * k + t)) < 1e-13);
    const double shifted =
        effective_angular_momentum(l + 1, k, geom, Couplings::with_flux_ratio(t - 1.0, q));
    CHECK(std::abs(shifted - s) < 1e-13);
    // affine in k: midpoint rule
    const double s2 = effective_angular_momentum(l, 2.0 * k, geom, Couplings::with_flux_ratio(t, q));
    const double s0 = effective_angular_momentum(l, 0.0, geom, Couplings::with_flux_ratio(t, q));
    CHECK(std::abs(s - 0.5 * (s0 + s2)) < 1e-13);
  }
}

TEST_CASE("burgers vector sets chi = burgers / 2pi") {
  const auto g = DefectGeometry::from_burgers(3.0);
  CHECK(g.chi == 3.0 / (2.0 * std::numbers::pi));
  REQUIRE(g.burgers.has_value());
  CHECK(*g.burgers == 3.0);
  CHECK_FALSE(DefectGeometry::minkowski().burgers.has_value());
}

TEST_CASE("coulomb eta") {
  CHECK(coulomb_eta(0.0, 0.0) == 0.0);
  CHECK(coulomb_eta(3.0, 4.0) == 5.0);
  CHECK(coulomb_eta(-0.5, 0.5) == doctest::Approx(0.7071067812).epsilon(1e-10));
  for (double x : {-7.5, -1.0, -1e-3, 0.0, 0.2, 4.0}) CHECK(coulomb_eta(x, 0.0) == std::abs(x));
}

TEST_CASE("heun parameters") {
  auto p = heun_params(MassProfile(1.0, 1.0), 0.0, 0.0, 0.0, 0.0);
  CHECK(p.alpha == 2.0);
  CHECK(p.beta == -1.0);
  CHECK(p.mu == 0.0);

  p = heun_params(MassProfile(1.0, 4.0), 3.0, 0.0, 0.0, 0.0);
  CHECK(p.alpha == 1.0);
  CHECK(p.beta == 2.0);
  CHECK(p.mu == 0.0);

  p = heun_params(MassProfile(1.0, 1.0), 2.0, 0.0, 0.5, 0.0);
  CHECK(p.mu == 2.0);

  SUBCASE("b = 0 always gives mu = 0") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
      CHECK(heun_params(MassProfile(u(rng), u(rng)), u(rng) - 2.5, u(rng), 0.0, u(rng)).mu == 0.0);
    }
  }
  SUBCASE("xi substitution needs nu > 0") {
    CHECK_THROWS_AS(heun_params(MassProfile(1.0, 0.0), 1.0, 0.0, 0.0, 0.0), NonPositiveSlope);
    CHECK_THROWS_AS(heun_params(MassProfile(1.0, -2.0), 1.0, 0.0, 0.0, 0.0), NonPositiveSlope);
  }
}

TEST_CASE("type invariants") {
  CHECK_THROWS_AS(MassProfile(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(MassProfile(-1.0, 1.0), InvalidArgument);
  CHECK_NOTHROW(MassProfile(1.0, -1.0));  // rejected later, where xi is formed
  CHECK_THROWS_AS(QuantumNumbers(0, 0, 0.0), InvalidArgument);
  CHECK_NOTHROW(QuantumNumbers(1, -3, 0.7));
  CHECK_THROWS_AS(Couplings::with_flux_ratio(0.5, 0.0), InvalidArgument);
}
