import cmath
import math

import numpy as np
import pytest

import dsq


def test_model_basics():
    p = dsq.ModelParams()
    assert p.nu == 0.75
    assert dsq.qubit_gap(0.75, 1.56) == pytest.approx(0.16026, abs=1e-5)
    assert dsq.derive_nu(0.75 * 1.75 / 1.56, 1.56) == pytest.approx(0.75, rel=1e-12)
    spec = dsq.pt_spectrum(0.75, 1.56)
    assert spec["qubit_ok"]
    with pytest.raises(dsq.ParameterError):
        dsq.derive_nu(-1.0, 1.56)


def test_rates():
    r0 = dsq.rate_set(0.0)
    assert r0.Gamma_over_gamma == pytest.approx(1.0, abs=1e-12)
    r = dsq.rate_set(2.5)
    assert abs(r.Gamma_over_gamma) <= 1.0
    assert r.k0 == pytest.approx(dsq.resonant_wavevector(r.omega0))
    eps, vg = dsq.dispersion(1.0)
    assert eps == pytest.approx(math.sqrt(3.0))


def test_evolution_and_concurrence():
    rates = dsq.Rates(1.0, -0.41, -0.04)
    rho0 = dsq.DensityMatrix4.projector(1)
    t = [0.0, 0.5, 1.0, 2.0, 4.0]
    traj = dsq.evolve(rho0, rates, dsq.DriveParams(), t)
    assert len(traj) == len(t)
    for ti, rho in zip(t, traj):
        m = np.asarray(rho.matrix)
        assert abs(np.trace(m) - 1.0) < 1e-10
        assert np.allclose(m, m.conj().T, atol=1e-12)
        assert dsq.concurrence(rho) == pytest.approx(dsq.undriven_concurrence_formula(rates, ti), abs=1e-8)


def test_steady_state():
    rates = dsq.Rates(1.0, -0.41, -0.04)
    rho, unique = dsq.steady_state(rates, dsq.DriveParams(0.35))
    assert unique
    assert dsq.concurrence(rho) == pytest.approx(dsq.steady_concurrence_formula(rates, 0.35), abs=1e-9)


def test_bell_state():
    psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    rho = dsq.DensityMatrix4(np.outer(psi, psi.conj()))
    assert dsq.concurrence(rho) == pytest.approx(1.0)
    bad = dsq.DensityMatrix4(np.diag([2.0, 0, 0, 0]).astype(complex))
    with pytest.raises(dsq.ValidationError):
        dsq.concurrence(bad)


def test_validate_and_scenario(tmp_path):
    report = dsq.validate_params()
    assert report["qubit_window"] == "pass"
    files = dsq.run_scenario("fig3b", str(tmp_path), 11)
    assert files
    header = open(files[0]).readline().strip()
    assert header.startswith("t_gamma,")
