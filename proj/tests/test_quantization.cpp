#include <doctest.h>

#include <cmath>
#include <random>

#include "kgspec/errors.hpp"
#include "kgspec/quantization.hpp"
#include "support/oracles.hpp"

using namespace kgspec;
using kgspec::testing::rel_err;

TEST_CASE("energy from lambda = 2n") {
  auto e = energy_from_lambda(1.5, 1, 0.0, 0.0);
  CHECK(e.plus == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(e.minus == -e.plus);
  CHECK(energy_from_lambda(2.0, 1, 0.5, 1.0).plus ==
        doctest::Approx(std::sqrt(11.0)).epsilon(1e-15));
  CHECK(energy_from_lambda(1.0, 2, 0.0, 0.0).plus ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK_THROWS_AS(energy_from_lambda(0.0, 1, 0.0, 0.0), NonPositiveSlope);
}

TEST_CASE("free ground state") {
  CHECK(nu_ground_free(1.0, 0.0) == 1.5);
  CHECK(nu_ground_free(1.0, -0.5) == 2.0);
  CHECK(nu_ground_free(2.0, 1.0) == 10.0);
  CHECK(energy_ground_free(1.0, 0.0, 0.0).plus == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(energy_ground_free(1.0, -0.5, 1.0).plus ==
        doctest::Approx(std::sqrt(11.0)).epsilon(1e-15));
  CHECK(energy_ground_free(1.0, 0.0, 1.0).plus == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
  CHECK(energy_ground_free(1.0, 0.0, 1.0).minus ==
        doctest::Approx(-std::sqrt(7.0)).epsilon(1e-15));

  SUBCASE("closed form composes with lambda = 2n") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
      const double m = 0.1 + std::abs(u(rng)), g = u(rng), k = u(rng);
      const double nu = nu_ground_free(m, g);
      CHECK(rel_err(energy_from_lambda(nu, 1, std::abs(g), k).plus,
                    energy_ground_free(m, g, k).plus) < 1e-12);
    }
  }
}

TEST_CASE("coulomb ground slope") {
  CHECK(nu_ground_coulomb(1.0, 0.0, 1.3, 7.0) == doctest::Approx(nu_ground_free(1.0, 1.3)));
  CHECK(nu_ground_coulomb(1.0, 0.1, 1.0, 2.0) ==
        doctest::Approx(2.5 - 0.4 * 4.0 / 3.0 + 0.08 / 3.0).epsilon(1e-14));
  CHECK(nu_ground_coulomb(1.0, 0.1, 1.0, 2.0) == doctest::Approx(1.9933333).epsilon(1e-7));
  CHECK(nu_ground_coulomb(1.0, 0.1, 1.0, 0.0) == 2.5);
}

TEST_CASE("coulomb ground energies against an independent quadratic solve") {
  for (double b : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
    for (double gamma : {0.0, 0.5, 1.0}) {
      for (double k : {0.0, 1.0}) {
        const double eta = coulomb_eta(gamma, b);
        const auto want = kgspec::testing::coulomb_ground_energies_quadratic(1.0, b, eta, k);
        const auto got = energy_ground_coulomb(1.0, b, eta, k);
        REQUIRE(got.size() == want.size());
        for (const auto& br : got) {
          double best = 1.0;
          for (double w : want) best = std::min(best, rel_err(br.energy, w));
          CHECK(best < 1e-12);
          CHECK(br.nu > 0.0);
          CHECK(rel_err(br.nu, nu_ground_coulomb(1.0, b, eta, br.energy)) < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("coulomb branches approach the free values as b -> 0") {
  for (double k : {0.0, 1.0}) {
    const double free_e = energy_ground_free(1.0, 0.0, k).plus;
    double prev_err = 1e300;
    for (int j = 1; j <= 6; ++j) {
      const double b = std::pow(10.0, -j);
      const auto branches = energy_ground_coulomb(1.0, b, coulomb_eta(0.0, b), k);
      double err = 0.0;
      for (const auto& br : branches) {
        if (br.nu > 0.0 && std::abs(br.energy) < 10.0 * free_e) {
          err = std::max(err, std::abs(std::abs(br.energy) - free_e));
        }
      }
      CHECK(err < 10.0 * b * free_e);
      CHECK(err <= prev_err);
      prev_err = err;
    }
  }
}

TEST_CASE("negative radicand gives NoRealSolution") {
  const double k = 7.0;
  double last_ok = -1.0;
  double first_bad = -1.0;
  for (int i = 1; i <= 100; ++i) {
    const double b = 0.01 * i;
    const double eta = coulomb_eta(0.0, b);
    const double rad = coulomb_ground_radicand(1.0, b, eta, k);
    if (rad >= 0.0) {
      last_ok = b;
    } else if (first_bad < 0.0) {
      first_bad = b;
    }
  }
  REQUIRE(first_bad > 0.0);
  REQUIRE(last_ok > 0.0);
  const double before = first_bad - 0.01;
  CHECK(coulomb_ground_radicand(1.0, before, coulomb_eta(0.0, before), k) >= 0.0);
  CHECK_THROWS_AS(energy_ground_coulomb(1.0, first_bad, coulomb_eta(0.0, first_bad), k),
                  NoRealSolution);
  CHECK_THROWS_AS(energy_ground_coulomb(1.0, 0.5, coulomb_eta(0.0, 0.5), 7.0), NoRealSolution);
}

TEST_CASE("degenerate Coulomb prefactor") {
  // 4b^2 g + 8b^2 - 2g - 1 = 0 at g = 0 needs b^2 = 1/8.
  const double b = std::sqrt(0.125);
  CHECK(std::abs(coulomb_ground_denominator(b, 0.0)) < 1e-15);
  CHECK_THROWS_AS(energy_ground_coulomb(1.0, b, 0.0, 0.0), DegenerateDenominator);
}

TEST_CASE("general-n solver") {
  SUBCASE("n = 1 free is the closed form") {
    const auto res = solve_general_n(QuantumNumbers(1, 0, 0.0), 1.0, {}, {});
    REQUIRE(res.points.size() == 1);
    CHECK(rel_err(res.points[0].nu, 1.5) < 1e-12);
  }
  SUBCASE("n = 2, 3 free match the polynomial roots") {
    for (int n : {2, 3}) {
      for (double g : {0.0, 0.5, 1.0, 2.0}) {
        for (double m : {0.5, 1.0, 2.0}) {
          const auto want = kgspec::testing::free_nu_roots_poly(n, g, m);
          const auto res = solve_general_n(QuantumNumbers(n, 0, 0.0), m, {},
                                           Couplings::with_flux_ratio(g));
          std::vector<double> inside;
          for (double nu : want)
            if (nu >= res.diagnostics.nu_lo && nu <= res.diagnostics.nu_hi) inside.push_back(nu);
          REQUIRE(res.points.size() == inside.size());
          for (std::size_t i = 0; i < inside.size(); ++i) {
            CHECK(rel_err(res.points[i].nu, inside[i]) < 1e-10);
          }
        }
      }
    }
  }
  SUBCASE("n = 2 free at g = 0 has the root 15/28 for m = 1") {
    const auto res = solve_general_n(QuantumNumbers(2, 0, 0.0), 1.0, {}, {});
    REQUIRE(res.points.size() == 1);
    CHECK(rel_err(res.points[0].nu, 15.0 / 28.0) < 1e-12);
  }
  SUBCASE("n = 1 Coulomb matches the closed-form branch set") {
    for (double b : {-0.1, 0.05, 0.2}) {
      const auto coup = Couplings::with_flux_ratio(0.0, 1.0, b);
      const auto solved = solve_general_n(QuantumNumbers(1, 1, 0.0), 1.0, {}, coup).points;
      const auto closed = ground_states(QuantumNumbers(1, 1, 0.0), 1.0, {}, coup);
      REQUIRE(solved.size() == closed.size());
      for (std::size_t i = 0; i < solved.size(); ++i) {
        CHECK(rel_err(solved[i].nu, closed[i].nu) < 1e-10);
        CHECK(rel_err(solved[i].energy, closed[i].energy) < 1e-10);
        CHECK(solved[i].branch == closed[i].branch);
      }
    }
  }
  SUBCASE("points are sorted by slope and truncate") {
    const auto pts = solve_general_n(QuantumNumbers(3, 2, 1.0), 1.0, DefectGeometry::from_chi(0.5),
                                     Couplings::with_flux_ratio(0.0, 1.0, 0.1))
                         .points;
    REQUIRE(!pts.empty());
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].nu <= pts[i].nu);
    for (const auto& p : pts) CHECK(p.truncation_residual < 1e-12);
  }
  SUBCASE("empty window raises NoRoots") {
    SolveOptions opts;
    opts.alpha_max = 0.05;
    CHECK_THROWS_AS(solve_general_n(QuantumNumbers(2, 0, 0.0), 1.0, {}, {}, opts), NoRoots);
  }
}

TEST_CASE("flux periodicity of the AB spectrum") {
  for (double t : {0.0, 0.3, 0.7}) {
    for (int l = -5; l <= 5; ++l) {
      const auto a = ground_states(QuantumNumbers(1, l + 1, 0.0), 1.0, {},
                                   Couplings::with_flux_ratio(t));
      const auto b = ground_states(QuantumNumbers(1, l, 0.0), 1.0, {},
                                   Couplings::with_flux_ratio(t + 1.0));
      REQUIRE(a.size() == b.size());
      CHECK(std::abs(a[0].nu - b[0].nu) < 1e-12);
      CHECK(std::abs(a[0].energies.plus - b[0].energies.plus) < 1e-12);
    }
  }
}

TEST_CASE("spectrum depends on |gamma| only") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double g = u(rng), k = u(rng), m = 0.2 + std::abs(u(rng));
    CHECK(nu_ground_free(m, g) == nu_ground_free(m, -g));
    CHECK(energy_ground_free(m, g, k).plus == energy_ground_free(m, -g, k).plus);
  }
  for (int n : {2, 3}) {
    const auto a = solve_general_n(QuantumNumbers(n, 0, 0.0), 1.0, {}, Couplings::with_flux_ratio(0.4));
    const auto b = solve_general_n(QuantumNumbers(n, 0, 0.0), 1.0, {}, Couplings::with_flux_ratio(-0.4));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t j = 0; j < a.points.size(); ++j) CHECK(a.points[j].nu == b.points[j].nu);
  }
}

TEST_CASE("Coulomb fixed point closes") {
  for (double b : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
    for (int l : {0, 1}) {
      for (double k : {0.0, 1.0}) {
        for (double chi : {0.0, 0.5}) {
          const double eta = coulomb_eta(l - chi * k, b);
          if (coulomb_ground_radicand(1.0, b, eta, k) < 0.0) continue;
          for (const auto& br : energy_ground_coulomb(1.0, b, eta, k)) {
            const double nu = nu_ground_coulomb(1.0, b, eta, br.energy);
            const double e2 = 2.0 * nu * (eta + 2.0) + k * k;
            CHECK(rel_err(std::copysign(std::sqrt(e2), br.energy), br.energy) < 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("classification and names") {
  CHECK(classify(Couplings{}) == Scenario::Free);
  CHECK(classify(Couplings::with_flux_ratio(0.2)) == Scenario::ABFlux);
  CHECK(classify(Couplings::with_flux_ratio(0.2, 1.0, 0.1)) == Scenario::Coulomb);
  CHECK(to_string(Scenario::ABFlux) == "ab");
  CHECK(to_string(Branch::Both) == "pm");
}
