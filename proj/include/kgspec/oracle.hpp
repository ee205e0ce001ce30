#pragma once

// Independent checks of quantized states: the radial ODE residual of the
// analytic wavefunction, a finite-difference eigensolver for the case without
// a Coulomb term, and the radial norm.

#include <vector>

#include "kgspec/core.hpp"
#include "kgspec/heun.hpp"

namespace kgspec {

struct RadialGrid {
  double lo = 1e-3;
  double hi = 10.0;
  int n_points = 4000;

  RadialGrid() = default;
  // Throws InvalidArgument unless 0 < lo < hi and n_points >= 3.
  RadialGrid(double lo, double hi, int n_points);

  double spacing() const { return (hi - lo) / (n_points - 1); }
  double at(int i) const { return lo + i * spacing(); }
};

// max |R'' + R'/xi - eff^2/xi^2 R + mu/xi R - alpha xi R - xi^2 R + beta R|
// over the grid, divided by max |R|. Derivatives of R are analytic.
double ode_residual(const RadialWavefunction& wf, const HeunParams& params,
                    const RadialGrid& grid);

// Lowest n_eigs values of E^2 for the rho-form radial equation at fixed
// slope, discretized on `grid` (rho units) with second-order conservative
// central differences.
std::vector<double> fd_eigenvalues(const MassProfile& mass, double eff_abs, double k,
                                   const RadialGrid& grid, int n_eigs);

// fd_eigenvalues plus a refinement check: halving the spacing must not move
// any of the returned eigenvalues by more than `tolerance` (relative),
// otherwise GridTooCoarse.
std::vector<double> fd_eigensolve_free(const MassProfile& mass, double eff_abs, double k,
                                       const RadialGrid& grid, int n_eigs,
                                       double tolerance = 1e-3);

// Smallest relative distance from `target` to any value in `eigs`.
double nearest_relative_gap(const std::vector<double>& eigs, double target);

// Trapezoidal integral of R(xi)^2 xi over the grid.
double normalization(const RadialWavefunction& wf, const RadialGrid& grid);

// Default oracle grids for a state of radial index n.
RadialGrid residual_grid(int n, double eff_abs);
RadialGrid fd_grid();

}  // namespace kgspec
