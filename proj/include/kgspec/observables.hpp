#pragma once

// Persistent currents I = -dE/dPhi_B (Byers-Yang).

#include <functional>
#include <optional>

#include "kgspec/quantization.hpp"

namespace kgspec {

inline constexpr double kDefaultFluxStep = 1e-5;  // in units of q Phi_B / (2 pi)

struct CurrentPoint {
  QuantumNumbers qn;
  double phi_B = 0.0;
  double current = 0.0;
  Branch branch = Branch::Plus;
};

// Closed-form ground-state current; `branch` selects which of +-E is
// differentiated (Minus flips the sign). Throws UndefinedAtZeroFlux when
// |sigma| < 1e-14.
double persistent_current_ground(double mass_m, double k, double sigma, double q, Branch branch);

// Energy as a function of Phi_B, with optional access to sigma(Phi_B) so
// that stencils straddling the |sigma| kink can be detected.
struct FluxSpectrum {
  std::function<double(double)> energy;
  std::function<double(double)> sigma;
};

// -[E(phi + h) - E(phi - h)] / (2h), h in Phi_B units. Throws KinkDetected
// when sigma changes sign (or vanishes) inside the stencil.
double persistent_current_numeric(const FluxSpectrum& spectrum, double phi_B, double step);

// Phi_B step matching `ratio_step` in units of q Phi_B / (2 pi).
double flux_step_for_ratio(double ratio_step, double q);

}  // namespace kgspec
