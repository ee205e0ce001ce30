#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgspec/core.hpp"
#include "kgspec/errors.hpp"
#include "kgspec/heun.hpp"
#include "kgspec/observables.hpp"
#include "kgspec/oracle.hpp"
#include "kgspec/quantization.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace kgspec;

PYBIND11_MODULE(_kgspec, m) {
  m.doc() = "Klein-Gordon bound states with a linear position-dependent mass, torsion, "
            "Coulomb and Aharonov-Bohm couplings";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NonPositiveSlope>(m, "NonPositiveSlope", base.ptr());
  py::register_exception<LambdaMismatch>(m, "LambdaMismatch", base.ptr());
  py::register_exception<NoRealSolution>(m, "NoRealSolution", base.ptr());
  py::register_exception<DegenerateDenominator>(m, "DegenerateDenominator", base.ptr());
  py::register_exception<NoRoots>(m, "NoRoots", base.ptr());
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", base.ptr());
  py::register_exception<UndefinedAtZeroFlux>(m, "UndefinedAtZeroFlux", base.ptr());
  py::register_exception<KinkDetected>(m, "KinkDetected", base.ptr());

  py::enum_<Scenario>(m, "Scenario")
      .value("Free", Scenario::Free)
      .value("Coulomb", Scenario::Coulomb)
      .value("ABFlux", Scenario::ABFlux);
  py::enum_<Branch>(m, "Branch")
      .value("Both", Branch::Both)
      .value("Plus", Branch::Plus)
      .value("Minus", Branch::Minus);

  py::class_<MassProfile>(m, "MassProfile")
      .def(py::init<double, double>(), "m"_a, "nu"_a)
      .def_readonly("m", &MassProfile::m)
      .def_readonly("nu", &MassProfile::nu);

  py::class_<DefectGeometry>(m, "DefectGeometry")
      .def(py::init(&DefectGeometry::from_chi), "chi"_a = 0.0)
      .def_static("minkowski", &DefectGeometry::minkowski)
      .def_static("from_chi", &DefectGeometry::from_chi, "chi"_a)
      .def_static("from_burgers", &DefectGeometry::from_burgers, "burgers"_a)
      .def_readonly("chi", &DefectGeometry::chi)
      .def_readonly("burgers", &DefectGeometry::burgers);

  py::class_<Couplings>(m, "Couplings")
      .def(py::init([](double b, double q, double phi_B) { return Couplings{b, q, phi_B}; }),
           "b"_a = 0.0, "q"_a = 1.0, "phi_B"_a = 0.0)
      .def_static("with_flux_ratio", &Couplings::with_flux_ratio, "ratio"_a, "q"_a = 1.0,
                  "b"_a = 0.0)
      .def_readonly("b", &Couplings::b)
      .def_readonly("q", &Couplings::q)
      .def_readonly("phi_B", &Couplings::phi_B)
      .def("flux_ratio", &Couplings::flux_ratio);

  py::class_<QuantumNumbers>(m, "QuantumNumbers")
      .def(py::init<int, int, double>(), "n"_a, "l"_a, "k"_a)
      .def_readonly("n", &QuantumNumbers::n)
      .def_readonly("l", &QuantumNumbers::l)
      .def_readonly("k", &QuantumNumbers::k);

  py::class_<HeunParams>(m, "HeunParams")
      .def_readonly("eff_abs", &HeunParams::eff_abs)
      .def_readonly("alpha", &HeunParams::alpha)
      .def_readonly("beta", &HeunParams::beta)
      .def_readonly("mu", &HeunParams::mu);

  m.def("effective_angular_momentum", &effective_angular_momentum, "l"_a, "k"_a, "geom"_a,
        "coup"_a);
  m.def("coulomb_eta", &coulomb_eta, "gamma_eff"_a, "b"_a);
  m.def("heun_params", &heun_params, "mass"_a, "energy"_a, "k"_a, "b"_a, "eff_abs"_a);

  py::class_<SeriesCoefficients>(m, "SeriesCoefficients")
      .def_readonly("coeffs", &SeriesCoefficients::coeffs)
      .def_readonly("params", &SeriesCoefficients::params)
      .def_readonly("lambda_", &SeriesCoefficients::lambda)
      .def_readonly("tau", &SeriesCoefficients::tau);
  py::class_<RadialWavefunction>(m, "RadialWavefunction")
      .def_readonly("coefficients", &RadialWavefunction::coefficients)
      .def_readonly("alpha", &RadialWavefunction::alpha)
      .def_readonly("eff_abs", &RadialWavefunction::eff_abs)
      .def_readonly("truncation_order", &RadialWavefunction::truncation_order);

  m.def("build_coefficients", &build_coefficients, "params"_a, "n_max"_a = kDefaultSeriesOrder);
  m.def("evaluate_G", &evaluate_G, "coeffs"_a, "xi"_a);
  m.def("evaluate_R", &evaluate_R, "wf"_a, "xi"_a);
  m.def("truncation_residual", &truncation_residual, "params"_a, "n"_a);

  py::class_<EnergyPair>(m, "EnergyPair")
      .def_readonly("plus", &EnergyPair::plus)
      .def_readonly("minus", &EnergyPair::minus)
      .def("__iter__", [](const EnergyPair& e) {
        return py::iter(py::make_tuple(e.plus, e.minus));
      });
  py::class_<CoulombBranch>(m, "CoulombBranch")
      .def_readonly("energy", &CoulombBranch::energy)
      .def_readonly("nu", &CoulombBranch::nu)
      .def_readonly("root_sign", &CoulombBranch::root_sign);
  py::class_<SpectrumPoint>(m, "SpectrumPoint")
      .def_readonly("qn", &SpectrumPoint::qn)
      .def_readonly("scenario", &SpectrumPoint::scenario)
      .def_readonly("eff", &SpectrumPoint::eff)
      .def_readonly("eff_abs", &SpectrumPoint::eff_abs)
      .def_readonly("nu", &SpectrumPoint::nu)
      .def_readonly("branch", &SpectrumPoint::branch)
      .def_readonly("energy", &SpectrumPoint::energy)
      .def_readonly("energies", &SpectrumPoint::energies)
      .def_readonly("params", &SpectrumPoint::params)
      .def_readonly("wavefunction", &SpectrumPoint::wavefunction)
      .def_readonly("truncation_residual", &SpectrumPoint::truncation_residual);

  m.def("energy_from_lambda", &energy_from_lambda, "nu"_a, "n"_a, "eff_abs"_a, "k"_a);
  m.def("nu_ground_free", &nu_ground_free, "mass_m"_a, "eff"_a);
  m.def("energy_ground_free", &energy_ground_free, "mass_m"_a, "eff"_a, "k"_a);
  m.def("nu_ground_coulomb", &nu_ground_coulomb, "mass_m"_a, "b"_a, "eta_abs"_a, "energy"_a);
  m.def("energy_ground_coulomb", &energy_ground_coulomb, "mass_m"_a, "b"_a, "eta_abs"_a, "k"_a);
  m.def("ground_states", &ground_states, "qn"_a, "mass_m"_a, "geom"_a, "coup"_a);
  m.def(
      "solve_general_n",
      [](const QuantumNumbers& qn, double mass_m, const DefectGeometry& geom,
         const Couplings& coup, double alpha_max, double alpha_step) {
        return solve_general_n(qn, mass_m, geom, coup, {alpha_max, alpha_step}).points;
      },
      "qn"_a, "mass_m"_a, "geom"_a, "coup"_a, "alpha_max"_a = 50.0, "alpha_step"_a = 0.01);

  py::class_<RadialGrid>(m, "RadialGrid")
      .def(py::init<double, double, int>(), "lo"_a, "hi"_a, "n_points"_a)
      .def_readonly("lo", &RadialGrid::lo)
      .def_readonly("hi", &RadialGrid::hi)
      .def_readonly("n_points", &RadialGrid::n_points);
  m.def("ode_residual", &ode_residual, "wf"_a, "params"_a, "grid"_a);
  m.def("fd_eigensolve_free", &fd_eigensolve_free, "mass"_a, "eff_abs"_a, "k"_a, "grid"_a,
        "n_eigs"_a, "tolerance"_a = 1e-3);
  m.def("normalization", &normalization, "wf"_a, "grid"_a);

  m.def("persistent_current_ground", &persistent_current_ground, "mass_m"_a, "k"_a, "sigma"_a,
        "q"_a, "branch"_a = Branch::Plus);
  m.def(
      "persistent_current_numeric",
      [](std::function<double(double)> energy, double phi_B, double step,
         std::optional<std::function<double(double)>> sigma) {
        FluxSpectrum s{std::move(energy), sigma ? *sigma : std::function<double(double)>{}};
        return persistent_current_numeric(s, phi_B, step);
      },
      "energy"_a, "phi_B"_a, "step"_a, "sigma"_a = py::none());
}
