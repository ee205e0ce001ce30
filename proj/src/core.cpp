#include "kgspec/core.hpp"

#include <cmath>
#include <string>

#include "kgspec/errors.hpp"

namespace kgspec {

MassProfile::MassProfile(double m, double nu) : m(m), nu(nu) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw InvalidArgument("rest mass must be positive and finite, got " + std::to_string(m));
  }
}

DefectGeometry DefectGeometry::from_burgers(double burgers) {
  return {burgers / (2.0 * std::numbers::pi), burgers};
}

Couplings Couplings::with_flux_ratio(double ratio, double q, double b) {
  if (q == 0.0) {
    if (ratio != 0.0) throw InvalidArgument("a nonzero flux ratio needs a nonzero charge");
    return {b, q, 0.0};
  }
  return {b, q, 2.0 * std::numbers::pi * ratio / q};
}

QuantumNumbers::QuantumNumbers(int n, int l, double k) : n(n), l(l), k(k) {
  if (n < 1) throw InvalidArgument("radial index n starts at 1, got " + std::to_string(n));
}

double effective_angular_momentum(int l, double k, const DefectGeometry& geom,
                                  const Couplings& coup) {
  return static_cast<double>(l) - geom.chi * k + coup.flux_ratio();
}

double coulomb_eta(double gamma_eff, double b) { return std::hypot(gamma_eff, b); }

HeunParams heun_params(const MassProfile& mass, double energy, double k, double b,
                       double eff_abs) {
  if (!(mass.nu > 0.0)) {
    throw NonPositiveSlope("xi = sqrt(nu) rho needs nu > 0, got nu = " + std::to_string(mass.nu));
  }
  const double root_nu = std::sqrt(mass.nu);
  HeunParams p;
  p.eff_abs = std::abs(eff_abs);
  p.alpha = 2.0 * mass.m / root_nu;
  p.beta = (energy * energy - mass.m * mass.m - k * k) / mass.nu;
  p.mu = 2.0 * b * energy / root_nu;
  return p;
}

}  // namespace kgspec
