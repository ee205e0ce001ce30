#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "kgspec/cli.hpp"
#include "kgspec/errors.hpp"
#include "kgspec/observables.hpp"
#include "kgspec/oracle.hpp"

namespace kgspec::cli {

namespace {

using Row = std::vector<Cell>;

struct Task {
  int n;
  int l;
  double k;
  double flux;
};

std::vector<Task> sweep_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (int n : c.ns)
    for (int l : c.ls)
      for (double k : c.ks)
        for (double f : c.fluxes) tasks.push_back({n, l, k, f});
  return tasks;
}

// Runs `work` for every task on a pool of threads; results keep task order.
std::vector<std::vector<Row>> run_pool(const std::vector<Task>& tasks, int threads,
                                       const std::function<std::vector<Row>(const Task&)>& work) {
  std::vector<std::vector<Row>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = work(tasks[i]);
  };
  unsigned count = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  count = std::clamp<unsigned>(count, 1, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  return results;
}

Table collect(std::string command, std::vector<std::string> columns,
              std::vector<std::vector<Row>> parts) {
  Table t{std::move(command), std::move(columns), {}, kSuccess};
  for (auto& part : parts)
    for (auto& row : part) t.rows.push_back(std::move(row));
  return t;
}

Couplings couplings_for(const RunConfig& c, double flux) {
  return Couplings::with_flux_ratio(flux, c.q, c.b);
}

std::vector<SpectrumPoint> solve_states(const QuantumNumbers& qn, const RunConfig& c,
                                        const DefectGeometry& geom, const Couplings& coup) {
  if (qn.n == 1) return ground_states(qn, c.m, geom, coup);
  return solve_general_n(qn, c.m, geom, coup).points;
}

// Status marker for solver failures, or empty if `fn` succeeded.
template <typename Fn>
std::string guarded(Fn&& fn) {
  try {
    fn();
  } catch (const NoRealSolution&) {
    return "NO_REAL_SOLUTION";
  } catch (const NoRoots&) {
    return "NO_ROOTS";
  } catch (const DegenerateDenominator&) {
    return "DEGENERATE_DENOMINATOR";
  } catch (const KinkDetected&) {
    return "KINK";
  } catch (const UndefinedAtZeroFlux&) {
    return "KINK";
  } catch (const Error&) {
    return "ERROR";
  }
  return {};
}

double relative_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

RadialGrid default_fd_grid(double nu, int n, double eff_abs) {
  return {1e-3, 10.0 / std::sqrt(nu) * std::max(1.0, std::sqrt(n + eff_abs)), 4000};
}

// The point's wavefunction checked against the radial equation at a slope
// scaled by (1 + detune), energy held fixed.
double detuned_residual(const SpectrumPoint& pt, double mass_m, double b, double detune) {
  const auto params =
      heun_params(MassProfile(mass_m, pt.nu * (1.0 + detune)), pt.energy, pt.qn.k, b, pt.eff_abs);
  return ode_residual(pt.wavefunction, params, residual_grid(pt.qn.n, pt.eff_abs));
}

}  // namespace

Table cmd_spectrum(const RunConfig& config) {
  RunConfig c = config;
  c.normalize();
  const double e_scale = c.absolute_units ? 1.0 : 1.0 / c.m;
  const double nu_scale = c.absolute_units ? 1.0 : 1.0 / (c.m * c.m);
  const DefectGeometry geom = DefectGeometry::from_chi(c.chi);

  std::vector<std::string> columns{"scenario", "n",     "l",      "k",
                                   "flux",     "root",  "branch", "eff_momentum",
                                   "nu_solved", "E_plus", "E_minus", "truncation_residual"};
  if (c.oracle) {
    columns.push_back("ode_residual");
    columns.push_back("fd_match");
  }
  columns.push_back("status");
  const std::string scenario{to_string(c.scenario)};

  auto work = [&](const Task& t) {
    std::vector<Row> rows;
    const QuantumNumbers qn(t.n, t.l, t.k);
    const Couplings coup = couplings_for(c, t.flux);
    std::vector<SpectrumPoint> pts;
    const std::string status = guarded([&] { pts = solve_states(qn, c, geom, coup); });
    if (!status.empty()) {
      const double eff = effective_angular_momentum(t.l, t.k, geom, coup);
      Row row{scenario, (long long)t.n, (long long)t.l, t.k, t.flux, std::monostate{},
              std::monostate{}, c.scenario == Scenario::Coulomb ? coulomb_eta(eff, c.b) : eff};
      row.resize(columns.size() - 1);
      row.push_back(status);
      rows.push_back(std::move(row));
      return rows;
    }
    long long root = 0;
    for (const auto& pt : pts) {
      Cell e_plus, e_minus;
      if (pt.branch == Branch::Both) {
        e_plus = pt.energies.plus * e_scale;
        e_minus = pt.energies.minus * e_scale;
      } else if (pt.energy > 0.0) {
        e_plus = pt.energy * e_scale;
      } else {
        e_minus = pt.energy * e_scale;
      }
      Row row{scenario,
              (long long)t.n,
              (long long)t.l,
              t.k,
              t.flux,
              root++,
              std::string(to_string(pt.branch)),
              pt.scenario == Scenario::Coulomb ? pt.eff_abs : pt.eff,
              pt.nu * nu_scale,
              e_plus,
              e_minus,
              pt.truncation_residual};
      if (c.oracle) {
        row.push_back(ode_residual(pt.wavefunction, pt.params, residual_grid(t.n, pt.eff_abs)));
        if (pt.branch == Branch::Both) {
          const auto eigs = fd_eigenvalues(MassProfile(c.m, pt.nu), pt.eff_abs, t.k,
                                           default_fd_grid(pt.nu, t.n, pt.eff_abs), t.n + 2);
          row.push_back(nearest_relative_gap(eigs, pt.energy * pt.energy));
        } else {
          row.push_back(std::monostate{});
        }
      }
      row.push_back(std::string("ok"));
      rows.push_back(std::move(row));
    }
    return rows;
  };

  Table table = collect("spectrum", columns, run_pool(sweep_tasks(c), c.threads, work));
  for (const auto& row : table.rows) {
    if (std::get<std::string>(row.back()) != "ok") table.exit_code = kSolverError;
  }
  return table;
}

Table cmd_current(const RunConfig& config) {
  RunConfig c = config;
  c.normalize();
  if (c.scenario != Scenario::ABFlux) throw UsageError("current needs --scenario ab");
  if (c.current_branch == Branch::Both) throw UsageError("current needs a definite branch");
  const double e_scale = c.absolute_units ? 1.0 : 1.0 / c.m;
  const DefectGeometry geom = DefectGeometry::from_chi(c.chi);
  const double step = flux_step_for_ratio(kDefaultFluxStep, c.q);
  const double sign = c.current_branch == Branch::Plus ? 1.0 : -1.0;

  const std::vector<std::string> columns{"n",         "l",          "k",         "flux",
                                         "sigma",     "root",       "branch",    "I_analytic",
                                         "I_numeric", "abs_discrepancy", "status"};

  auto work = [&](const Task& t) {
    std::vector<Row> rows;
    const QuantumNumbers qn(t.n, t.l, t.k);
    const Couplings coup = couplings_for(c, t.flux);
    const double phi = coup.phi_B;
    const double sigma = effective_angular_momentum(t.l, t.k, geom, coup);
    auto sigma_at = [&](double p) {
      return effective_angular_momentum(t.l, t.k, geom, Couplings{0.0, c.q, p});
    };

    // Number of roots at the central flux; each root index gets a row.
    std::size_t roots = 1;
    if (t.n > 1) {
      const std::string s =
          guarded([&] { roots = solve_general_n(qn, c.m, geom, coup).points.size(); });
      if (!s.empty()) {
        rows.push_back(Row{(long long)t.n, (long long)t.l, t.k, t.flux, sigma, std::monostate{},
                           std::string(to_string(c.current_branch)), std::monostate{},
                           std::monostate{}, std::monostate{}, s});
        return rows;
      }
    }
    for (std::size_t r = 0; r < roots; ++r) {
      FluxSpectrum spectrum;
      spectrum.sigma = sigma_at;
      if (t.n == 1) {
        spectrum.energy = [&](double p) {
          return sign * energy_ground_free(c.m, sigma_at(p), t.k).plus;
        };
      } else {
        spectrum.energy = [&, r](double p) {
          const auto pts = solve_general_n(qn, c.m, geom, Couplings{0.0, c.q, p}).points;
          if (pts.size() != roots) throw Error("root count changes inside the stencil");
          return sign * pts[r].energies.plus;
        };
      }
      Cell analytic, numeric, discrepancy;
      std::string status = guarded([&] {
        numeric = persistent_current_numeric(spectrum, phi, step) * e_scale;
      });
      if (t.n == 1) {
        const std::string s = guarded([&] {
          analytic = persistent_current_ground(c.m, t.k, sigma, c.q, c.current_branch) * e_scale;
        });
        if (status.empty()) status = s;
      }
      if (status.empty() && t.n == 1) {
        discrepancy = std::abs(std::get<double>(analytic) - std::get<double>(numeric));
      }
      rows.push_back(Row{(long long)t.n, (long long)t.l, t.k, t.flux, sigma, (long long)r,
                         std::string(to_string(c.current_branch)), analytic, numeric, discrepancy,
                         status.empty() ? std::string("ok") : status});
    }
    return rows;
  };

  Table table = collect("current", columns, run_pool(sweep_tasks(c), c.threads, work));
  for (const auto& row : table.rows) {
    const auto& s = std::get<std::string>(row.back());
    if (s != "ok" && s != "KINK") table.exit_code = kSolverError;
  }
  return table;
}

Table cmd_verify(const RunConfig& config) {
  RunConfig c = config;
  c.normalize();
  const DefectGeometry geom = DefectGeometry::from_chi(c.chi);
  const std::vector<std::string> columns{"check", "n",        "l",         "k",     "flux",
                                         "root",  "measured", "threshold", "status"};

  auto work = [&](const Task& t) {
    std::vector<Row> rows;
    long long root = -1;
    auto record = [&](const std::string& name, double measured, double threshold, bool pass) {
      rows.push_back(Row{name, (long long)t.n, (long long)t.l, t.k, t.flux,
                         root < 0 ? Cell{} : Cell{root}, measured, threshold,
                         std::string(pass ? "PASS" : "FAIL")});
    };
    // Checks that run `fn` and fail with the solver status if it throws.
    auto checked = [&](const std::string& name, double threshold, auto&& fn) {
      double measured = std::numeric_limits<double>::quiet_NaN();
      const std::string s = guarded([&] { measured = fn(); });
      if (!s.empty()) {
        rows.push_back(Row{name, (long long)t.n, (long long)t.l, t.k, t.flux,
                           root < 0 ? Cell{} : Cell{root}, std::monostate{}, threshold, s});
        return;
      }
      record(name, measured, threshold, measured <= threshold);
    };

    const QuantumNumbers qn(t.n, t.l, t.k);
    const Couplings coup = couplings_for(c, t.flux);
    std::vector<SpectrumPoint> pts;
    const std::string status = guarded([&] { pts = solve_states(qn, c, geom, coup); });
    if (!status.empty()) {
      rows.push_back(Row{std::string("solve"), (long long)t.n, (long long)t.l, t.k, t.flux,
                         std::monostate{}, std::monostate{}, std::monostate{}, status});
      return rows;
    }

    for (const auto& pt : pts) {
      ++root;
      const double two_n = 2.0 * t.n;
      record("lambda", std::abs(heun_lambda(pt.params) - two_n) / two_n, 1e-10,
             std::abs(heun_lambda(pt.params) - two_n) / two_n <= 1e-10);
      record("truncation", pt.truncation_residual, kTruncationTolerance,
             is_truncated(pt.wavefunction.coefficients, t.n));
      const double tail = tail_ratio(pt.wavefunction.coefficients.coeffs, t.n);
      record("cascade", tail, 1e-10, tail < 1e-10);
      const double res = detuned_residual(pt, c.m, c.b, c.detune);
      record("ode_residual", res, 1e-8, res < 1e-8);
      const double detuned = detuned_residual(pt, c.m, c.b, 0.01);
      record("detuning_sensitivity", detuned, 1e-4, detuned > 1e-4);
      if (pt.branch == Branch::Both) {
        checked("fd_match", 1e-3, [&] {
          const auto eigs = fd_eigensolve_free(MassProfile(c.m, pt.nu), pt.eff_abs, t.k,
                                               default_fd_grid(pt.nu, t.n, pt.eff_abs), t.n + 2);
          return nearest_relative_gap(eigs, pt.energy * pt.energy);
        });
      }
      if (c.scenario == Scenario::Coulomb && t.n == 1) {
        const double nu = nu_ground_coulomb(c.m, c.b, pt.eff_abs, pt.energy);
        const double back = std::copysign(energy_from_lambda(nu, 1, pt.eff_abs, t.k).plus,
                                           pt.energy);
        const double err = relative_diff(back, pt.energy);
        record("coulomb_fixed_point", err, 1e-10, err <= 1e-10);
      }
      if (c.scenario == Scenario::ABFlux && t.n == 1) {
        const double step = flux_step_for_ratio(kDefaultFluxStep, c.q);
        if (std::abs(pt.eff) > 10.0 * kDefaultFluxStep) {
          checked("current_agreement", 1e-8, [&] {
            FluxSpectrum spectrum;
            spectrum.sigma = [&](double p) {
              return effective_angular_momentum(t.l, t.k, geom, Couplings{0.0, c.q, p});
            };
            spectrum.energy = [&](double p) {
              return energy_ground_free(c.m, spectrum.sigma(p), t.k).plus;
            };
            const double numeric = persistent_current_numeric(spectrum, coup.phi_B, step);
            const double analytic =
                persistent_current_ground(c.m, t.k, pt.eff, c.q, Branch::Plus);
            return relative_diff(numeric, analytic);
          });
        }
      }
    }
    root = -1;

    // Cross-state checks compare the full root sets.
    auto compare_sets = [&](const std::vector<SpectrumPoint>& other) {
      if (other.size() != pts.size()) return std::numeric_limits<double>::infinity();
      double worst = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        worst = std::max({worst, relative_diff(pts[i].nu, other[i].nu),
                          relative_diff(pts[i].energy, other[i].energy)});
      }
      return worst;
    };
    if (t.n == 1) {
      checked("closed_form", 1e-10, [&] {
        return compare_sets(solve_general_n(qn, c.m, geom, coup).points);
      });
    }
    checked("eff_symmetry", 1e-12, [&] {
      const QuantumNumbers flipped(t.n, -t.l, -t.k);
      return compare_sets(
          solve_states(flipped, c, geom, couplings_for(c, t.flux == 0.0 ? 0.0 : -t.flux)));
    });
    if (c.scenario == Scenario::ABFlux) {
      checked("flux_periodicity", 1e-12, [&] {
        const QuantumNumbers shifted(t.n, t.l + 1, t.k);
        const auto a = solve_states(qn, c, geom, couplings_for(c, t.flux + 1.0));
        const auto b = solve_states(shifted, c, geom, coup);
        if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          worst = std::max({worst, relative_diff(a[i].nu, b[i].nu),
                            relative_diff(a[i].energy, b[i].energy)});
        }
        return worst;
      });
    }
    if (t.k == 0.0 && c.chi != 0.0) {
      checked("minkowski_reduction", 0.0, [&] {
        return compare_sets(solve_states(qn, c, DefectGeometry::minkowski(), coup));
      });
    }
    return rows;
  };

  Table table = collect("verify", columns, run_pool(sweep_tasks(c), c.threads, work));
  for (const auto& row : table.rows) {
    if (std::get<std::string>(row.back()) != "PASS") table.exit_code = kVerifyFailure;
  }
  return table;
}

}  // namespace kgspec::cli
