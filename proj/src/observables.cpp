#include "kgspec/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kgspec/errors.hpp"

namespace kgspec {

double persistent_current_ground(double mass_m, double k, double sigma, double q,
                                 Branch branch) {
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  if (std::abs(sigma) < 1e-14) {
    throw UndefinedAtZeroFlux("ground-state current is undefined at sigma = 0");
  }
  if (branch == Branch::Both) throw InvalidArgument("current needs a definite energy branch");
  const double s = std::abs(sigma);
  const double sign = sigma > 0.0 ? 1.0 : -1.0;
  const double magnitude = q / (4.0 * std::numbers::pi) * sign * mass_m * (4.0 * s + 7.0) /
                           std::sqrt((2.0 * s + 3.0) * (s + 2.0) + k * k / (mass_m * mass_m));
  return branch == Branch::Plus ? -magnitude : magnitude;
}

double persistent_current_numeric(const FluxSpectrum& spectrum, double phi_B, double step) {
  if (!(step > 0.0)) throw InvalidArgument("differentiation step must be positive");
  if (spectrum.sigma) {
    const double lo = spectrum.sigma(phi_B - step);
    const double hi = spectrum.sigma(phi_B + step);
    if (lo == 0.0 || hi == 0.0 || (lo < 0.0) != (hi < 0.0)) {
      throw KinkDetected("sigma changes sign inside the stencil around phi_B = " +
                         std::to_string(phi_B));
    }
  }
  return -(spectrum.energy(phi_B + step) - spectrum.energy(phi_B - step)) / (2.0 * step);
}

double flux_step_for_ratio(double ratio_step, double q) {
  if (q == 0.0) throw InvalidArgument("flux derivative needs a nonzero charge");
  return 2.0 * std::numbers::pi * ratio_step / std::abs(q);
}

}  // namespace kgspec
