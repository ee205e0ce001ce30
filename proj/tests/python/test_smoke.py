import math

import pytest

import kgspec


def test_ground_free_state():
    nu = kgspec.nu_ground_free(1.0, 0.0)
    assert nu == 1.5
    plus, minus = kgspec.energy_ground_free(1.0, 0.0, 0.0)
    assert plus == pytest.approx(math.sqrt(6.0), rel=1e-15)
    assert minus == -plus


def test_effective_momentum_and_eta():
    geom = kgspec.DefectGeometry.from_chi(0.5)
    coup = kgspec.Couplings.with_flux_ratio(0.25)
    assert kgspec.effective_angular_momentum(0, 1.0, geom, coup) == pytest.approx(-0.25)
    assert kgspec.coulomb_eta(3.0, 4.0) == 5.0


def test_solver_and_oracles():
    qn = kgspec.QuantumNumbers(2, 0, 0.0)
    points = kgspec.solve_general_n(qn, 1.0, kgspec.DefectGeometry(), kgspec.Couplings())
    assert len(points) == 1
    p = points[0]
    assert p.nu == pytest.approx(15.0 / 28.0, rel=1e-12)
    grid = kgspec.RadialGrid(0.01, 8.0 * math.sqrt(2.0), 2000)
    assert kgspec.ode_residual(p.wavefunction, p.params, grid) < 1e-8
    eigs = kgspec.fd_eigensolve_free(kgspec.MassProfile(1.0, 1.5), 0.0, 0.0,
                                     kgspec.RadialGrid(1e-3, 10.0, 4000), 2)
    assert min(abs(e - 6.0) / 6.0 for e in eigs) < 1e-3


def test_coulomb_branches_and_errors():
    eta = kgspec.coulomb_eta(0.0, 0.1)
    branches = kgspec.energy_ground_coulomb(1.0, 0.1, eta, 0.0)
    assert branches and all(b.nu > 0 for b in branches)
    with pytest.raises(kgspec.NoRealSolution):
        kgspec.energy_ground_coulomb(1.0, 0.5, 0.5, 7.0)
    with pytest.raises(kgspec.Error):
        kgspec.heun_params(kgspec.MassProfile(1.0, -1.0), 1.0, 0.0, 0.0, 0.0)


def test_persistent_current():
    want = -9.0 / (4.0 * math.pi * math.sqrt(10.0))
    got = kgspec.persistent_current_ground(1.0, 0.0, 0.5, 1.0, kgspec.Branch.Plus)
    assert got == pytest.approx(want, rel=1e-14)

    def sigma(phi):
        return 0.5 + phi / (2.0 * math.pi)

    def energy(phi):
        return kgspec.energy_ground_free(1.0, sigma(phi), 0.0).plus

    h = 2.0 * math.pi * 1e-5
    assert kgspec.persistent_current_numeric(energy, 0.0, h, sigma) == pytest.approx(want, rel=1e-8)
    with pytest.raises(kgspec.KinkDetected):
        kgspec.persistent_current_numeric(energy, -math.pi, h, sigma)
