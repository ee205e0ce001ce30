#include "kgspec/heun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgspec/errors.hpp"

namespace kgspec {

double heun_lambda(const HeunParams& p) {
  return p.beta + 0.25 * p.alpha * p.alpha - 2.0 - 2.0 * p.eff_abs;
}

double heun_tau(const HeunParams& p) {
  return 0.5 * p.alpha * (2.0 * p.eff_abs + 1.0) - p.mu;
}

SeriesCoefficients build_coefficients(const HeunParams& params, int n_max) {
  if (n_max < 1) throw InvalidArgument("series order must be at least 1");

  SeriesCoefficients out;
  out.params = params;
  out.lambda = heun_lambda(params);
  out.tau = heun_tau(params);

  const double two_eff = 2.0 * params.eff_abs;
  auto& a = out.coeffs;
  a.resize(static_cast<std::size_t>(n_max) + 1);
  a[0] = 1.0;
  a[1] = out.tau / (1.0 + two_eff) * a[0];
  for (int j = 0; j + 2 <= n_max; ++j) {
    const double denom = (j + 2.0) * (j + 2.0 + two_eff);
    a[j + 2] = ((params.alpha * (j + 1.0) + out.tau) * a[j + 1] - (out.lambda - 2.0 * j) * a[j]) /
               denom;
  }
  return out;
}

double evaluate_G(const SeriesCoefficients& coeffs, double xi) {
  if (xi < 0.0) throw InvalidArgument("series is defined for xi >= 0");
  double acc = 0.0;
  for (auto it = coeffs.coeffs.rbegin(); it != coeffs.coeffs.rend(); ++it) acc = acc * xi + *it;
  return acc;
}

RadialWavefunction make_wavefunction(const HeunParams& params,
                                     std::optional<int> truncation_order, int n_max) {
  RadialWavefunction wf;
  wf.coefficients = build_coefficients(params, n_max);
  wf.alpha = params.alpha;
  wf.eff_abs = params.eff_abs;
  wf.truncation_order = truncation_order;
  return wf;
}

std::span<const double> active_coefficients(const RadialWavefunction& wf) {
  std::span<const double> all(wf.coefficients.coeffs);
  if (!wf.truncation_order) return all;
  const auto keep = static_cast<std::size_t>(std::max(0, *wf.truncation_order)) + 1;
  return all.first(std::min(keep, all.size()));
}

double evaluate_R(const RadialWavefunction& wf, double xi) {
  if (xi < 0.0) throw InvalidArgument("wavefunction is defined for xi >= 0");
  // pow(0, 0) == 1 keeps R(0) = G(0) for eff_abs = 0.
  const double envelope =
      std::exp(-0.5 * xi * xi - 0.5 * wf.alpha * xi) * std::pow(xi, wf.eff_abs);
  if (envelope == 0.0) return 0.0;
  double g = 0.0;
  const auto a = active_coefficients(wf);
  for (auto it = a.rbegin(); it != a.rend(); ++it) g = g * xi + *it;
  return envelope * g;
}

double truncation_residual(const HeunParams& params, int n) {
  if (n < 1) throw InvalidArgument("truncation index n starts at 1");
  const double lambda = heun_lambda(params);
  const double target = 2.0 * n;
  if (std::abs(lambda - target) > 1e-10 * std::max(1.0, target)) {
    throw LambdaMismatch("lambda = " + std::to_string(lambda) + " but 2n = " +
                         std::to_string(target));
  }
  return build_coefficients(params, n + 1).coeffs[static_cast<std::size_t>(n) + 1];
}

double leading_scale(std::span<const double> coeffs, int n) {
  double scale = 0.0;
  const auto last = std::min<std::size_t>(static_cast<std::size_t>(n) + 1, coeffs.size());
  for (std::size_t j = 0; j < last; ++j) scale = std::max(scale, std::abs(coeffs[j]));
  return scale;
}

double tail_ratio(std::span<const double> coeffs, int n) {
  double tail = 0.0;
  for (std::size_t j = static_cast<std::size_t>(n) + 1; j < coeffs.size(); ++j) {
    tail = std::max(tail, std::abs(coeffs[j]));
  }
  return tail / leading_scale(coeffs, n);
}

bool is_truncated(const SeriesCoefficients& coeffs, int n, double tolerance) {
  if (n + 1 > coeffs.order()) return false;
  return std::abs(coeffs.coeffs[static_cast<std::size_t>(n) + 1]) <=
         tolerance * leading_scale(coeffs.coeffs, n);
}

}  // namespace kgspec
