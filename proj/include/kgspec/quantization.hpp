#pragma once

// Quantization of the linear-potential slope nu from the two truncation
// conditions lambda = 2n and a_{n+1} = 0, for the free, Coulomb and
// Aharonov-Bohm flux cases.

#include <string_view>
#include <vector>

#include "kgspec/core.hpp"
#include "kgspec/heun.hpp"

namespace kgspec {

enum class Scenario { Free, Coulomb, ABFlux };
// Both: the energy enters only squared (mu = 0), so +E and -E share a state.
enum class Branch { Both, Plus, Minus };

std::string_view to_string(Scenario s);
std::string_view to_string(Branch b);

// b != 0 -> Coulomb, else nonzero flux -> ABFlux, else Free.
Scenario classify(const Couplings& coup);

struct EnergyPair {
  double plus = 0.0;
  double minus = 0.0;
};

// +-sqrt(2 nu (n + eff_abs + 1) + k^2). Throws NonPositiveSlope for nu <= 0.
EnergyPair energy_from_lambda(double nu, int n, double eff_abs, double k);

// m^2 (|eff| + 3/2)
double nu_ground_free(double mass_m, double eff);

// +-m sqrt((2|eff|+3)(|eff|+2) + k^2/m^2)
EnergyPair energy_ground_free(double mass_m, double eff, double k);

// (m^2/2)(2|eta|+3) - 2 m b E (2|eta|+2)/(2|eta|+1) + 2 b^2 E^2/(2|eta|+1)
double nu_ground_coulomb(double mass_m, double b, double eta_abs, double energy);

struct CoulombBranch {
  double energy = 0.0;
  double nu = 0.0;
  int root_sign = 0;  // +1 for the "1 + sqrt" root, -1 for "1 - sqrt"
};

// Both roots of the ground-state quadratic that come with nu > 0, ordered by
// root_sign (+1 first). b == 0 falls through to the free ground state.
// Throws NoRealSolution (negative radicand, or no root with nu > 0) and
// DegenerateDenominator (4b^2|eta| + 8b^2 - 2|eta| - 1 ~ 0).
std::vector<CoulombBranch> energy_ground_coulomb(double mass_m, double b, double eta_abs,
                                                 double k);

// The prefactor denominator and radicand of the closed-form Coulomb ground
// state, exposed for diagnostics and scans.
double coulomb_ground_denominator(double b, double eta_abs);
double coulomb_ground_radicand(double mass_m, double b, double eta_abs, double k);

struct SpectrumPoint {
  QuantumNumbers qn;
  Scenario scenario = Scenario::Free;
  double eff = 0.0;      // signed gamma / sigma (before the Coulomb hypot)
  double eff_abs = 0.0;  // |gamma|, |sigma| or |eta|
  double nu = 0.0;       // solved slope nu_{n,l,k}
  Branch branch = Branch::Both;
  double energy = 0.0;   // energy the wavefunction was built with
  EnergyPair energies;   // +-|energy| from lambda = 2n
  HeunParams params;
  RadialWavefunction wavefunction;
  double truncation_residual = 0.0;  // |a_{n+1}| / max_{j<=n} |a_j|
};

// Builds the point (parameters, series, residual) for a given slope and
// energy. Does not check that the point is quantized.
SpectrumPoint make_spectrum_point(const QuantumNumbers& qn, double mass_m,
                                  const DefectGeometry& geom, const Couplings& coup,
                                  double nu, double energy, Branch branch,
                                  int n_max = kDefaultSeriesOrder);

// Closed-form n = 1 states: one point for mu = 0, one per Coulomb branch.
std::vector<SpectrumPoint> ground_states(const QuantumNumbers& qn, double mass_m,
                                         const DefectGeometry& geom, const Couplings& coup);

struct SolveOptions {
  double alpha_max = 50.0;
  double alpha_step = 0.01;
  int n_max = kDefaultSeriesOrder;
};

struct SolveDiagnostics {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double nu_lo = 0.0;  // slope window covered, nu = 4 m^2 / alpha^2
  double nu_hi = 0.0;
  int brackets = 0;
  // alpha parametrization keeps nu > 0, so this only counts roots whose
  // polished residual failed the 1e-12 target.
  int rejected = 0;
};

struct SolveResult {
  std::vector<SpectrumPoint> points;  // sorted by nu, then branch
  SolveDiagnostics diagnostics;
};

// All nu > 0 satisfying lambda = 2n and a_{n+1} = 0 in the search window.
// Throws NoRoots when none exist.
SolveResult solve_general_n(const QuantumNumbers& qn, double mass_m, const DefectGeometry& geom,
                            const Couplings& coup, const SolveOptions& options = {});

}  // namespace kgspec
