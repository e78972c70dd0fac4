import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from cpsehp.errors import DomainError, GridError
from cpsehp.model import BOUND, P0, PotentialParams
from cpsehp.nu import QuantumNumbers, energy
from cpsehp.oracle import node_count
from cpsehp.wavefun import (log_norm_closed_form, log_norm_printed, radial_equation_residual,
                            radial_wavefunction, support_scale, wavefunction_spec,
                            density_profile, shape_exponents)

HEAVY = PotentialParams(v1=1.2, v2=0.02, B=0.2, alpha=0.04, mu=1.7, hbar=0.9)


def _scipy_overlap(params, qa, qb):
    Ea, Eb = energy(params, qa), energy(params, qb)
    top = 60 * max(support_scale(params, qa, Ea), support_scale(params, qb, Eb))

    def f(r):
        return radial_wavefunction(params, qa, Ea, r) * radial_wavefunction(params, qb, Eb, r)

    # split off the r^eta cusp at the origin
    opts = dict(limit=500, epsabs=1e-13, epsrel=1e-11)
    return sp_integrate.quad(f, 0.0, 1.0, **opts)[0] + sp_integrate.quad(f, 1.0, top, **opts)[0]


@pytest.mark.parametrize("params", [BOUND, HEAVY])
@pytest.mark.parametrize("l", [0, 1, 2])
def test_closed_form_norm_and_orthogonality(params, l):
    for n in range(4):
        qn = QuantumNumbers(n, l)
        assert not wavefunction_spec(params, qn, energy(params, qn)).renormalized
        assert _scipy_overlap(params, qn, qn) == pytest.approx(1.0, abs=1e-8)
        for m in range(n):
            assert abs(_scipy_overlap(params, qn, QuantumNumbers(m, l))) < 1e-6


@pytest.mark.parametrize("l", [0, 2])
def test_node_count_equals_n(l):
    for n in range(4):
        qn = QuantumNumbers(n, l)
        E = energy(BOUND, qn)
        r = np.linspace(1e-3, 40 * support_scale(BOUND, qn, E), 20001)
        assert node_count(radial_wavefunction(BOUND, qn, E, r)) == n


@pytest.mark.parametrize("n,l", [(0, 0), (2, 1), (3, 2)])
def test_radial_equation_residual_small(n, l):
    qn = QuantumNumbers(n, l)
    E = energy(BOUND, qn)
    r = np.linspace(0.01, 20 * support_scale(BOUND, qn, E), 400)
    peak = np.max(np.abs(radial_wavefunction(BOUND, qn, E, r)))
    assert np.max(np.abs(radial_equation_residual(BOUND, qn, E, r))) <= 1e-6 * peak


def test_residual_detects_wrong_energy():
    qn = QuantumNumbers(1, 1)
    E = energy(BOUND, qn) * 1.01
    r = np.linspace(0.01, 500.0, 200)
    peak = np.max(np.abs(radial_wavefunction(BOUND, qn, E, r)))
    assert np.max(np.abs(radial_equation_residual(BOUND, qn, E, r))) > 1e-4 * peak


def test_printed_normalization_differs_from_closed_form():
    qn = QuantumNumbers(1, 0)
    beta, eta = shape_exponents(BOUND, qn, energy(BOUND, qn))
    good = log_norm_closed_form(BOUND.alpha, 1, beta, eta)
    assert abs(log_norm_printed(BOUND.alpha, 1, beta, eta) - good) > 1.0


def test_wavefunction_vanishes_at_ends():
    qn = QuantumNumbers(0, 1)
    E = energy(BOUND, qn)
    assert radial_wavefunction(BOUND, qn, E, 0.0) == 0.0
    assert abs(radial_wavefunction(BOUND, qn, E, 1e5)) < 1e-30


def test_density_profile_and_grid_checks():
    qn = QuantumNumbers(0, 0)
    E = energy(BOUND, qn)
    r = np.linspace(0.0, 200.0, 2001)
    curve = density_profile(BOUND, qn, E, r)
    assert curve.names() == ["r", "density"]
    assert np.trapezoid(curve.columns["density"], r) == pytest.approx(1.0, rel=1e-4)
    with pytest.raises(GridError):
        density_profile(BOUND, qn, E, r[::-1])
    with pytest.raises(DomainError):
        radial_wavefunction(BOUND, qn, E, -1.0)


def test_p0_exponent_domain():
    # the closed-form P0 levels have positive exponents but are not eigenstates
    qn = QuantumNumbers(0, 0)
    beta, eta = shape_exponents(P0, qn, energy(P0, qn))
    assert beta > 0 and eta > 0
    with pytest.raises(DomainError):
        shape_exponents(P0, qn, 0.01)
