import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from cpsehp.errors import DomainError
from cpsehp.model import P0
from cpsehp.nu import thermo_reduction
from cpsehp.superstat import (SuperstatParams, closed_form_superstat_partition,
                              deformed_boltzmann, superstat_curve, superstat_partition,
                              superstat_properties)
from cpsehp.thermo import partition

RED = thermo_reduction(P0, 0)


@settings(max_examples=20)
@given(st.one_of(st.floats(-5.0, -0.1), st.floats(0.1, 5.0)))
def test_q_zero_reduces_to_boltzmann(beta):
    assert superstat_partition(RED, SuperstatParams(0.0, beta)) == pytest.approx(
        partition(RED, beta), rel=1e-10)


@settings(max_examples=20)
@given(st.floats(0.0, 2.0), st.floats(-5.0, -0.1))
def test_band_partition_matches_scipy(q, beta):
    f = lambda rho: deformed_boltzmann(RED.energy_at(rho), beta, q)
    ref = sp_integrate.quad(f, RED.delta, RED.delta + RED.lam, epsabs=0, epsrel=1e-13)[0]
    assert superstat_partition(RED, SuperstatParams(q, beta)) == pytest.approx(ref, rel=1e-11)


def test_monotone_in_q():
    zs = [superstat_partition(RED, SuperstatParams(q, -1.0)) for q in (0, 0.1, 0.5, 1)]
    assert all(a < b for a, b in zip(zs, zs[1:]))


def test_entropy_identity():
    grid = [SuperstatParams(q, b) for q in (0.0, 0.5) for b in (-4.0, -1.0, 0.3, 2.0)]
    for p in superstat_properties(RED, grid):
        assert p.S == pytest.approx(p.lnZ + p.beta_t * p.U, abs=1e-8)


def test_semi_infinite_mode():
    # beta Q2 < 0 needs beta < 0 here (Q2 > 0)
    ss = SuperstatParams(0.0, -1.0, "semi_infinite")
    f = lambda rho: math.exp(RED.energy_at(rho))
    ref = sp_integrate.quad(f, RED.delta, np.inf, epsrel=1e-12)[0]
    assert superstat_partition(RED, ss) == pytest.approx(ref, rel=1e-9)
    with pytest.raises(DomainError):
        superstat_partition(RED, SuperstatParams(0.0, 1.0, "semi_infinite"))
    with pytest.raises(DomainError):
        SuperstatParams(0.0, 1.0, "upper")


def test_printed_closed_form_is_report_only():
    # at q = 0 the printed form is negative, unlike either quadrature mode
    assert closed_form_superstat_partition(RED, -1.0, 0.0) < 0


def test_q_sweep_curve():
    curve = superstat_curve(RED, [SuperstatParams(q, -1.0) for q in (0, 0.5, 1)], x_name="q")
    assert curve.names()[0] == "q"
    assert np.all(np.diff(curve.columns["Z"]) > 0)
