import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from cpsehp.errors import DomainError
from cpsehp.model import P0
from cpsehp.nu import thermo_reduction
from cpsehp.thermo import (band_average_energy, closed_form_aux, closed_form_moments,
                           closed_form_partition, closed_form_properties, energy_moments,
                           log_partition, partition, properties, quantum_partition,
                           thermo_curve)

RED = thermo_reduction(P0, 0)
LAMBDA_P0 = 3.513880567706278  # sqrt(20) - delta, 50-digit mpmath

betas = st.one_of(st.floats(-5.0, -0.1), st.floats(0.1, 5.0))


def _scipy_partition(beta):
    lo, hi = RED.delta, RED.delta + RED.lam
    f = lambda rho: math.exp(-beta * RED.energy_at(rho))
    return sp_integrate.quad(f, lo, hi, epsabs=0, epsrel=1e-13)[0]


def test_zero_temperature_limit_is_band_length():
    assert partition(RED, 0.0) == pytest.approx(LAMBDA_P0, rel=1e-12)


@settings(max_examples=25)
@given(betas)
def test_partition_matches_scipy(beta):
    assert partition(RED, beta) == pytest.approx(_scipy_partition(beta), rel=1e-11)


@settings(max_examples=25)
@given(betas)
def test_closed_form_partition_matches_quadrature(beta):
    assert closed_form_partition(RED, beta) == pytest.approx(partition(RED, beta), rel=1e-10)


@settings(max_examples=25)
@given(betas)
def test_closed_form_moments_match_quadrature(beta):
    m = closed_form_moments(RED, beta)
    mean, var = energy_moments(RED, beta)
    assert m[1] / m[0] == pytest.approx(mean, rel=1e-10)
    assert m[2] / m[0] - (m[1] / m[0]) ** 2 == pytest.approx(var, rel=1e-5)


def test_property_identities_on_grid():
    grid = np.concatenate([np.linspace(-5, -0.1, 25), np.linspace(0.1, 5, 25)])
    for p in properties(RED, grid):
        assert p.S == pytest.approx(p.lnZ + p.beta_t * p.U, abs=1e-8)
        assert p.F == pytest.approx(-p.lnZ / p.beta_t, rel=1e-12)
        mean, var = energy_moments(RED, p.beta_t)
        assert p.U == pytest.approx(mean, rel=1e-8)
        assert p.C == pytest.approx(p.beta_t ** 2 * var, rel=1e-4)


def test_closed_form_properties_agree():
    for b in (-3.0, -0.5, 0.7, 4.0):
        a = closed_form_properties(RED, b)
        q = properties(RED, [b])[0]
        assert a.U == pytest.approx(q.U, rel=1e-8)
        assert a.C == pytest.approx(q.C, rel=1e-4)


def test_high_temperature_energy_tends_to_band_average():
    assert properties(RED, [1e-3])[0].U == pytest.approx(band_average_energy(RED), rel=1e-3)


def test_curve_layout():
    curve = thermo_curve(RED, np.linspace(-5, -0.1, 7))
    assert curve.names() == ["beta", "Z", "U", "S", "F", "C"]
    assert len(curve) == 7


def test_beta_zero_excluded_and_aux_domain():
    with pytest.raises(DomainError):
        properties(RED, [0.0])
    with pytest.raises(DomainError):
        closed_form_aux(RED, 1.0)  # beta Q2 > 0 there
    aux = closed_form_aux(RED, -1.0)
    assert aux.aleph == pytest.approx(math.sqrt(RED.Q2) * RED.Q3)
    assert aux.aleph4 is None


def test_quantum_sum_is_diagnostic_only():
    z = quantum_partition(P0, 0, 1.0)
    assert z == pytest.approx(sum(math.exp(-RED.energy_at(RED.delta + n)) for n in range(4)))
