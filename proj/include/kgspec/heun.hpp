#pragma once

// Power-series engine for the biconfluent Heun factor G(xi) of the radial
// wavefunction
//
//   R(xi) = exp(-xi^2/2) exp(-alpha xi/2) xi^{|eff|} G(xi),  G = sum_j a_j xi^j,
//
// with the three-term recurrence
//
//   (j+2)(j+2+2|eff|) a_{j+2} = [alpha (j+1) + tau] a_{j+1} - (lambda - 2j) a_j,
//   (1+2|eff|) a_1 = tau a_0,  a_0 = 1,
//
//   lambda = beta + alpha^2/4 - 2 - 2|eff|,   tau = (alpha/2)(2|eff|+1) - mu.
//
// mu = 0 is the case without a Coulomb term; there a_1 = alpha/2.

#include <optional>
#include <span>
#include <vector>

#include "kgspec/core.hpp"

namespace kgspec {

inline constexpr int kDefaultSeriesOrder = 64;
// |a_{n+1}| <= kTruncationTolerance * max_{j<=n} |a_j| declares truncation.
inline constexpr double kTruncationTolerance = 1e-10;

double heun_lambda(const HeunParams& p);
double heun_tau(const HeunParams& p);

struct SeriesCoefficients {
  std::vector<double> coeffs;  // a_0 .. a_{n_max}
  HeunParams params;
  double lambda = 0.0;
  double tau = 0.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct RadialWavefunction {
  SeriesCoefficients coefficients;
  double alpha = 0.0;
  double eff_abs = 0.0;
  std::optional<int> truncation_order;
};

// Throws InvalidArgument for n_max < 1.
SeriesCoefficients build_coefficients(const HeunParams& params,
                                      int n_max = kDefaultSeriesOrder);

// Partial sum of the series (Horner). Throws InvalidArgument for xi < 0.
double evaluate_G(const SeriesCoefficients& coeffs, double xi);

RadialWavefunction make_wavefunction(const HeunParams& params,
                                     std::optional<int> truncation_order = std::nullopt,
                                     int n_max = kDefaultSeriesOrder);

// Coefficients that define the wavefunction: a_0..a_n for a truncated state
// (the tail beyond n is round-off), the whole series otherwise.
std::span<const double> active_coefficients(const RadialWavefunction& wf);

double evaluate_R(const RadialWavefunction& wf, double xi);

// a_{n+1} for a parameter set whose lambda has already been fixed to 2n.
// Throws LambdaMismatch when |lambda - 2n| exceeds round-off scale.
double truncation_residual(const HeunParams& params, int n);

// max_{j<=n} |a_j|; the scale that truncation is measured against.
double leading_scale(std::span<const double> coeffs, int n);

// max_{n<j<=n_max} |a_j| / max_{i<=n} |a_i|. Zero for an exactly terminating
// series.
double tail_ratio(std::span<const double> coeffs, int n);

bool is_truncated(const SeriesCoefficients& coeffs, int n,
                  double tolerance = kTruncationTolerance);

}  // namespace kgspec
