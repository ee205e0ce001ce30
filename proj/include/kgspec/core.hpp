#pragma once

// Domain types for a scalar particle with mass m(rho) = m + nu * rho in the
// space-like dislocation background. Natural units (hbar = c = 1).

#include <numbers>
#include <optional>

namespace kgspec {

struct MassProfile {
  double m = 1.0;   // rest mass, > 0
  double nu = 1.0;  // slope of the linear scalar potential

  MassProfile() = default;
  MassProfile(double m, double nu);
};

struct DefectGeometry {
  double chi = 0.0;               // torsion parameter; 0 is Minkowski
  std::optional<double> burgers;  // Burgers-vector magnitude, if known

  static DefectGeometry minkowski() { return {}; }
  static DefectGeometry from_chi(double chi) { return {chi, std::nullopt}; }
  // chi = burgers / (2 pi)
  static DefectGeometry from_burgers(double burgers);
};

struct Couplings {
  double b = 0.0;      // signed Coulomb strength, q A_0 = b / rho
  double q = 1.0;      // electric charge
  double phi_B = 0.0;  // Aharonov-Bohm flux

  // q * phi_B / (2 pi), the only flux combination that enters the spectrum.
  double flux_ratio() const { return q * phi_B / (2.0 * std::numbers::pi); }

  // Couplings whose flux ratio q*phi_B/(2 pi) equals `ratio`.
  static Couplings with_flux_ratio(double ratio, double q = 1.0, double b = 0.0);
};

struct QuantumNumbers {
  int n = 1;  // radial truncation index, >= 1
  int l = 0;
  double k = 0.0;

  QuantumNumbers() = default;
  QuantumNumbers(int n, int l, double k);
};

// Dimensionless parameters of the radial equation in xi = sqrt(nu) rho.
struct HeunParams {
  double eff_abs = 0.0;  // |gamma_eff| (free / flux) or |eta| (Coulomb)
  double alpha = 0.0;    // 2 m / sqrt(nu)
  double beta = 0.0;     // (E^2 - m^2 - k^2) / nu
  double mu = 0.0;       // 2 b E / sqrt(nu)
};

// l - chi k + q phi_B / (2 pi)
double effective_angular_momentum(int l, double k, const DefectGeometry& geom,
                                  const Couplings& coup);

// sqrt(gamma_eff^2 + b^2)
double coulomb_eta(double gamma_eff, double b);

// Throws NonPositiveSlope when mass.nu <= 0.
HeunParams heun_params(const MassProfile& mass, double energy, double k, double b,
                       double eff_abs);

}  // namespace kgspec
