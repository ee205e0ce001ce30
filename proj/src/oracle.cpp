#include "kgspec/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kgspec/errors.hpp"

namespace kgspec {

RadialGrid::RadialGrid(double lo, double hi, int n_points) : lo(lo), hi(hi), n_points(n_points) {
  if (!(lo > 0.0)) throw InvalidArgument("grid must exclude the origin (lo > 0)");
  if (!(hi > lo)) throw InvalidArgument("grid needs hi > lo");
  if (n_points < 3) throw InvalidArgument("grid needs at least 3 points");
}

namespace {

struct SeriesValue {
  double g, dg, d2g;
};

SeriesValue evaluate_series(std::span<const double> a, double x) {
  SeriesValue v{0.0, 0.0, 0.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    v.d2g = v.d2g * x + 2.0 * v.dg;
    v.dg = v.dg * x + v.g;
    v.g = v.g * x + *it;
  }
  return v;
}

}  // namespace

double ode_residual(const RadialWavefunction& wf, const HeunParams& params,
                    const RadialGrid& grid) {
  const double g = wf.eff_abs;
  const double eq_centrifugal = params.eff_abs * params.eff_abs;
  double max_res = 0.0;
  double max_r = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.at(i);
    const auto s = evaluate_series(active_coefficients(wf), x);
    const double f = std::exp(-0.5 * x * x - 0.5 * wf.alpha * x) * std::pow(x, g);
    // p = f'/f, f''/f = p' + p^2
    const double p = -x - 0.5 * wf.alpha + g / x;
    const double dp = -1.0 - g / (x * x);
    const double r = f * s.g;
    const double dr = f * (s.dg + p * s.g);
    const double d2r = f * (s.d2g + 2.0 * p * s.dg + (dp + p * p) * s.g);
    const double res = d2r + dr / x - eq_centrifugal / (x * x) * r + params.mu / x * r -
                       params.alpha * x * r - x * x * r + params.beta * r;
    max_res = std::max(max_res, std::abs(res));
    max_r = std::max(max_r, std::abs(r));
  }
  return max_r > 0.0 ? max_res / max_r : max_res;
}

std::vector<double> fd_eigenvalues(const MassProfile& mass, double eff_abs, double k,
                                   const RadialGrid& grid, int n_eigs) {
  if (!(mass.nu > 0.0)) throw NonPositiveSlope("finite-difference oracle needs nu > 0");
  if (n_eigs < 1) throw InvalidArgument("n_eigs must be positive");

  // Sturm-Liouville form for w = rho^{-|g|} R with weight p = rho^{2|g|+1}:
  //   -(1/p)(p w')' + V w = E^2 w,  V = m^2 + k^2 + 2 m nu rho + nu^2 rho^2.
  // Nodes rho_i = lo + i h, i < N-1; Dirichlet at hi. Cell 0 spans
  // [0, lo + h/2] with zero flux at rho = 0, so the excised core is kept.
  const double g = std::abs(eff_abs);
  const double h = grid.spacing();
  const int unknowns = grid.n_points - 1;
  if (unknowns < n_eigs) throw InvalidArgument("grid has fewer unknowns than n_eigs");

  const double power = 2.0 * g + 1.0;
  auto weight = [power](double r) { return std::pow(r, power); };
  auto weight_integral = [power](double r) { return std::pow(r, power + 1.0) / (power + 1.0); };

  std::vector<double> diag(static_cast<std::size_t>(unknowns));
  std::vector<double> sub(static_cast<std::size_t>(unknowns) - 1);
  std::vector<double> volume(static_cast<std::size_t>(unknowns));
  for (int i = 0; i < unknowns; ++i) {
    const double r = grid.at(i);
    const double left = i == 0 ? 0.0 : r - 0.5 * h;
    volume[i] = weight_integral(r + 0.5 * h) - weight_integral(left);
    const double potential =
        mass.m * mass.m + k * k + 2.0 * mass.m * mass.nu * r + mass.nu * mass.nu * r * r;
    const double right_flux = weight(r + 0.5 * h) / h;
    const double left_flux = i == 0 ? 0.0 : weight(r - 0.5 * h) / h;
    diag[i] = volume[i] * potential + right_flux + left_flux;
    if (i + 1 < unknowns) sub[i] = -right_flux;
  }
  // Symmetrize W^{-1/2} A W^{-1/2}.
  for (int i = 0; i < unknowns; ++i) diag[i] /= volume[i];
  for (int i = 0; i + 1 < unknowns; ++i) sub[i] /= std::sqrt(volume[i] * volume[i + 1]);

  // Bisection for the n_eigs smallest eigenvalues.
  lapack_int found = 0;
  lapack_int nsplit = 0;
  std::vector<double> values(static_cast<std::size_t>(unknowns));
  std::vector<lapack_int> block(static_cast<std::size_t>(unknowns));
  std::vector<lapack_int> split(static_cast<std::size_t>(unknowns));
  const lapack_int info =
      LAPACKE_dstebz('I', 'E', unknowns, 0.0, 0.0, 1, n_eigs, 2.0 * LAPACKE_dlamch('S'), diag.data(), sub.data(),
                     &found, &nsplit, values.data(), block.data(), split.data());
  if (info != 0 || found != n_eigs) {
    throw Error("tridiagonal eigensolver failed (info " + std::to_string(info) + ")");
  }
  values.resize(static_cast<std::size_t>(found));
  return values;
}

std::vector<double> fd_eigensolve_free(const MassProfile& mass, double eff_abs, double k,
                                       const RadialGrid& grid, int n_eigs, double tolerance) {
  auto coarse = fd_eigenvalues(mass, eff_abs, k, grid, n_eigs);
  const RadialGrid fine(grid.lo, grid.hi, 2 * grid.n_points - 1);
  const auto refined = fd_eigenvalues(mass, eff_abs, k, fine, n_eigs);
  for (int i = 0; i < n_eigs; ++i) {
    const double shift = std::abs(refined[i] - coarse[i]) / std::abs(refined[i]);
    if (shift > tolerance) {
      throw GridTooCoarse("eigenvalue " + std::to_string(i) + " moved by " +
                          std::to_string(shift) + " (relative) when the spacing was halved");
    }
  }
  return coarse;
}

double nearest_relative_gap(const std::vector<double>& eigs, double target) {
  double best = std::numeric_limits<double>::infinity();
  for (double e : eigs) best = std::min(best, std::abs(e - target) / std::abs(target));
  return best;
}

double normalization(const RadialWavefunction& wf, const RadialGrid& grid) {
  const double h = grid.spacing();
  double sum = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.at(i);
    const double r = evaluate_R(wf, x);
    const double w = (i == 0 || i == grid.n_points - 1) ? 0.5 : 1.0;
    sum += w * r * r * x;
  }
  return sum * h;
}

RadialGrid residual_grid(int n, double eff_abs) {
  return {0.01, 8.0 * std::max(1.0, std::sqrt(n + std::abs(eff_abs))), 2000};
}

RadialGrid fd_grid() { return {1e-3, 10.0, 4000}; }

}  // namespace kgspec
