#include "kgspec/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "kgspec/errors.hpp"

namespace kgspec {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Free: return "free";
    case Scenario::Coulomb: return "coulomb";
    case Scenario::ABFlux: return "ab";
  }
  return "?";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Both: return "pm";
    case Branch::Plus: return "+";
    case Branch::Minus: return "-";
  }
  return "?";
}

Scenario classify(const Couplings& coup) {
  if (coup.b != 0.0) return Scenario::Coulomb;
  if (coup.flux_ratio() != 0.0) return Scenario::ABFlux;
  return Scenario::Free;
}

EnergyPair energy_from_lambda(double nu, int n, double eff_abs, double k) {
  if (!(nu > 0.0)) throw NonPositiveSlope("energy relation needs nu > 0");
  const double e = std::sqrt(2.0 * nu * (n + std::abs(eff_abs) + 1.0) + k * k);
  return {e, -e};
}

double nu_ground_free(double mass_m, double eff) {
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  return mass_m * mass_m * (std::abs(eff) + 1.5);
}

EnergyPair energy_ground_free(double mass_m, double eff, double k) {
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  const double g = std::abs(eff);
  const double e = mass_m * std::sqrt((2.0 * g + 3.0) * (g + 2.0) + k * k / (mass_m * mass_m));
  return {e, -e};
}

double nu_ground_coulomb(double mass_m, double b, double eta_abs, double energy) {
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  const double g = std::abs(eta_abs);
  return 0.5 * mass_m * mass_m * (2.0 * g + 3.0) -
         2.0 * mass_m * b * energy * (2.0 * g + 2.0) / (2.0 * g + 1.0) +
         2.0 * b * b * energy * energy / (2.0 * g + 1.0);
}

double coulomb_ground_denominator(double b, double eta_abs) {
  const double g = std::abs(eta_abs);
  return 4.0 * b * b * g + 8.0 * b * b - 2.0 * g - 1.0;
}

double coulomb_ground_radicand(double mass_m, double b, double eta_abs, double k) {
  const double g = std::abs(eta_abs);
  const double den = coulomb_ground_denominator(b, eta_abs);
  const double m2 = mass_m * mass_m;
  return 1.0 - den * (m2 * (g + 2.0) * (2.0 * g + 3.0) + k * k) * (2.0 * g + 1.0) /
                   (4.0 * m2 * b * b * (g + 2.0) * (g + 2.0) * (2.0 * g + 2.0) * (2.0 * g + 2.0));
}

std::vector<CoulombBranch> energy_ground_coulomb(double mass_m, double b, double eta_abs,
                                                 double k) {
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  const double g = std::abs(eta_abs);
  if (b == 0.0) {
    const auto free = energy_ground_free(mass_m, g, k);
    const double nu = nu_ground_free(mass_m, g);
    return {{free.plus, nu, +1}, {free.minus, nu, -1}};
  }

  const double den = coulomb_ground_denominator(b, g);
  if (std::abs(den) < 1e-12) {
    throw DegenerateDenominator("4b^2|eta| + 8b^2 - 2|eta| - 1 vanishes at b = " +
                                std::to_string(b) + ", |eta| = " + std::to_string(g));
  }
  const double radicand = coulomb_ground_radicand(mass_m, b, g, k);
  if (radicand < 0.0) {
    throw NoRealSolution("ground-state radicand is negative (" + std::to_string(radicand) + ")");
  }
  const double prefactor = 2.0 * mass_m * b * (g + 2.0) * (2.0 * g + 2.0) / den;
  const double root = std::sqrt(radicand);

  std::vector<CoulombBranch> out;
  for (int sign : {+1, -1}) {
    const double e = prefactor * (1.0 + sign * root);
    const double nu = nu_ground_coulomb(mass_m, b, g, e);
    if (nu > 0.0) out.push_back({e, nu, sign});
  }
  if (out.empty()) throw NoRealSolution("no ground-state branch with nu > 0");
  return out;
}

SpectrumPoint make_spectrum_point(const QuantumNumbers& qn, double mass_m,
                                  const DefectGeometry& geom, const Couplings& coup,
                                  double nu, double energy, Branch branch, int n_max) {
  SpectrumPoint pt;
  pt.qn = qn;
  pt.scenario = classify(coup);
  pt.eff = effective_angular_momentum(qn.l, qn.k, geom, coup);
  pt.eff_abs = coup.b != 0.0 ? coulomb_eta(pt.eff, coup.b) : std::abs(pt.eff);
  pt.nu = nu;
  pt.branch = branch;
  pt.energy = energy;
  pt.energies = {std::abs(energy), -std::abs(energy)};
  pt.params = heun_params(MassProfile(mass_m, nu), energy, qn.k, coup.b, pt.eff_abs);
  pt.wavefunction = make_wavefunction(pt.params, qn.n, std::max(n_max, qn.n + 1));
  const auto& a = pt.wavefunction.coefficients.coeffs;
  pt.truncation_residual =
      std::abs(a[static_cast<std::size_t>(qn.n) + 1]) / leading_scale(a, qn.n);
  return pt;
}

std::vector<SpectrumPoint> ground_states(const QuantumNumbers& qn, double mass_m,
                                         const DefectGeometry& geom, const Couplings& coup) {
  if (qn.n != 1) throw InvalidArgument("closed forms exist only for n = 1");
  const double eff = effective_angular_momentum(qn.l, qn.k, geom, coup);
  std::vector<SpectrumPoint> out;
  if (coup.b == 0.0) {
    const double nu = nu_ground_free(mass_m, eff);
    const double e = energy_ground_free(mass_m, eff, qn.k).plus;
    out.push_back(make_spectrum_point(qn, mass_m, geom, coup, nu, e, Branch::Both));
    return out;
  }
  const double eta = coulomb_eta(eff, coup.b);
  for (const auto& br : energy_ground_coulomb(mass_m, coup.b, eta, qn.k)) {
    out.push_back(make_spectrum_point(qn, mass_m, geom, coup, br.nu, br.energy,
                                      br.energy >= 0.0 ? Branch::Plus : Branch::Minus));
  }
  std::sort(out.begin(), out.end(),
            [](const SpectrumPoint& x, const SpectrumPoint& y) { return x.nu < y.nu; });
  return out;
}

namespace {

// a_{n+1} / max_{j<=n} |a_j| along the curve lambda = 2n, parametrized by
// alpha = 2m / sqrt(nu). sign = 0 means mu = 0.
class TruncationCurve {
 public:
  TruncationCurve(double m, double k, double b, double eff_abs, int n, int sign)
      : m_(m), k_(k), b_(b), g_(eff_abs), n_(n), sign_(sign) {}

  double nu(double alpha) const { return 4.0 * m_ * m_ / (alpha * alpha); }

  double energy(double alpha) const {
    const double e = std::sqrt(2.0 * nu(alpha) * (n_ + g_ + 1.0) + k_ * k_);
    return sign_ < 0 ? -e : e;
  }

  double operator()(double alpha) const {
    const double nu_a = nu(alpha);
    const double e = energy(alpha);
    HeunParams p;
    p.eff_abs = g_;
    p.alpha = alpha;
    p.beta = (e * e - m_ * m_ - k_ * k_) / nu_a;
    p.mu = sign_ == 0 ? 0.0 : b_ * e * alpha / m_;
    const auto c = build_coefficients(p, n_ + 1);
    return c.coeffs[static_cast<std::size_t>(n_) + 1] / leading_scale(c.coeffs, n_);
  }

 private:
  double m_, k_, b_, g_;
  int n_;
  int sign_;
};

// Bisection down to a small bracket, then safeguarded Newton.
double polish_root(const TruncationCurve& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int it = 0; it < 60 && hi - lo > 1e-9 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }
    const double h = 1e-6 * x;
    const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
    double next = slope != 0.0 ? x - fx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) return next;
    x = next;
  }
  return x;
}

std::vector<double> bracket_roots(const TruncationCurve& f, const SolveOptions& opt,
                                  SolveDiagnostics& diag) {
  std::vector<double> roots;
  const int steps = static_cast<int>(std::floor(opt.alpha_max / opt.alpha_step + 1e-9));
  double x_prev = opt.alpha_step;
  double f_prev = f(x_prev);
  if (f_prev == 0.0) roots.push_back(x_prev);
  for (int i = 2; i <= steps; ++i) {
    const double x = i * opt.alpha_step;
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
      ++diag.brackets;
    } else if (f_prev != 0.0 && (fx < 0.0) != (f_prev < 0.0)) {
      roots.push_back(polish_root(f, x_prev, x));
      ++diag.brackets;
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace

SolveResult solve_general_n(const QuantumNumbers& qn, double mass_m, const DefectGeometry& geom,
                            const Couplings& coup, const SolveOptions& options) {
  if (qn.n < 1) throw InvalidArgument("radial index n starts at 1");
  if (!(mass_m > 0.0)) throw InvalidArgument("rest mass must be positive");
  if (!(options.alpha_step > 0.0) || !(options.alpha_max > options.alpha_step)) {
    throw InvalidArgument("alpha search window must be (step, alpha_max] with step > 0");
  }

  const double eff = effective_angular_momentum(qn.l, qn.k, geom, coup);
  const double eff_abs = coup.b != 0.0 ? coulomb_eta(eff, coup.b) : std::abs(eff);

  SolveResult result;
  auto& diag = result.diagnostics;
  diag.alpha_lo = options.alpha_step;
  diag.alpha_hi = options.alpha_max;
  diag.nu_lo = 4.0 * mass_m * mass_m / (options.alpha_max * options.alpha_max);
  diag.nu_hi = 4.0 * mass_m * mass_m / (options.alpha_step * options.alpha_step);

  const std::vector<int> signs = coup.b != 0.0 ? std::vector<int>{+1, -1} : std::vector<int>{0};
  for (int sign : signs) {
    const TruncationCurve curve(mass_m, qn.k, coup.b, eff_abs, qn.n, sign);
    for (double alpha : bracket_roots(curve, options, diag)) {
      const Branch branch = sign == 0 ? Branch::Both : (sign > 0 ? Branch::Plus : Branch::Minus);
      auto pt = make_spectrum_point(qn, mass_m, geom, coup, curve.nu(alpha), curve.energy(alpha),
                                    branch, options.n_max);
      if (pt.truncation_residual < 1e-12) {
        result.points.push_back(std::move(pt));
      } else {
        ++diag.rejected;
      }
    }
  }

  if (result.points.empty()) {
    std::ostringstream msg;
    msg << "no nu > 0 root for n=" << qn.n << " l=" << qn.l << " k=" << qn.k
        << " in alpha window (" << diag.alpha_lo << ", " << diag.alpha_hi << "], nu window ["
        << diag.nu_lo << ", " << diag.nu_hi << ")";
    throw NoRoots(msg.str());
  }
  std::stable_sort(result.points.begin(), result.points.end(),
                   [](const SpectrumPoint& x, const SpectrumPoint& y) { return x.nu < y.nu; });
  return result;
}

}  // namespace kgspec
