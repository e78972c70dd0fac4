import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cpsehp.errors import DomainError
from cpsehp.model import BOUND, P0, TABLE_PARAMS, Kind, PotentialParams, discriminant
from cpsehp.nu import (QuantumNumbers, energy, enumerate_bound_states, nu_constants,
                       nu_consistent, physical_band_edge, quantization_residual,
                       special_case_energy, thermo_reduction)

# 50-digit mpmath evaluations of the compact form on P0, l = 0
DELTA_P0 = 0.9582553872933010
LAMBDA_P0 = 3.513880567706278
E_P0 = [-6.956598293528626e-3, -2.851795699398413e-3, -2.180736259108254e-3,
        -2.014973462899961e-3]
BETA_WF_P0 = [10.914759084403673, 6.085713925906168, 4.859498449651475, 4.505493231378694]


def test_frozen_p0_spectrum():
    red = thermo_reduction(P0, 0)
    assert red.delta == pytest.approx(DELTA_P0, rel=1e-14)
    assert red.lam == pytest.approx(LAMBDA_P0, rel=1e-14)
    assert red.Q3 == pytest.approx(20.0, rel=1e-14)
    states = enumerate_bound_states(P0, 0, 10)
    assert len(states) == 4  # n is capped at floor(lambda) = 3
    for s, e, b in zip(states, E_P0, BETA_WF_P0):
        assert s.energy == pytest.approx(e, rel=1e-13)
        assert s.beta_wf == pytest.approx(b, rel=1e-12)


def test_p0_levels_are_not_normalizable_eigenstates():
    # Q3 > 0 puts rho + Q3/rho > 0 for every n
    for n in range(4):
        qn = QuantumNumbers(n, 0)
        assert not nu_consistent(P0, qn)
        assert quantization_residual(P0, qn, energy(P0, qn)) > 1.0


def test_bound_levels_satisfy_quantization_condition():
    for l in range(3):
        for s in enumerate_bound_states(BOUND, l, 3):
            qn = QuantumNumbers(s.n, l)
            assert s.nu_consistent
            assert abs(quantization_residual(BOUND, qn, s.energy)) < 1e-9


def test_supercritical_raises():
    with pytest.raises(DomainError):
        energy(TABLE_PARAMS, QuantumNumbers(0, 0))
    assert math.isfinite(energy(TABLE_PARAMS, QuantumNumbers(0, 1)))


def test_quantum_numbers_validation():
    with pytest.raises(DomainError):
        QuantumNumbers(-1, 0)
    with pytest.raises(DomainError):
        QuantumNumbers(0, 1.5)


def test_nu_constants_structure():
    qn = QuantumNumbers(1, 1)
    E = energy(BOUND, qn)
    c = nu_constants(BOUND, qn, E)
    assert (c.c1, c.c2, c.c3, c.c4, c.c5) == (1.0, 1.0, 1.0, 0.0, -0.5)
    assert c.c12 == pytest.approx(math.sqrt(c.c8))
    with pytest.raises(DomainError):
        nu_constants(BOUND, qn, 0.1)


def test_energy_increases_with_n_below_edge():
    for l in range(3):
        es = [s.energy for s in enumerate_bound_states(BOUND, l, 3)]
        assert all(a < b for a, b in zip(es, es[1:]))
    assert physical_band_edge(P0, 0) is None
    assert physical_band_edge(BOUND, 0) > 3


@given(st.sampled_from([1e-3, 1e-4]), st.integers(1, 3))
def test_coulomb_limit_law_at_l0(alpha, N):
    p = PotentialParams(v1=1.0, v2=0.0, B=0.0, alpha=alpha)
    E = energy(p, QuantumNumbers(N - 1, 0))
    residual = E + 1 / (2 * N * N) + alpha / 2 + alpha * alpha * N * N / 8
    assert abs(residual) < 1e-10


def test_coulomb_limit_law_extra_term_for_l_positive():
    # for l > 0 the centrifugal approximant adds a known, nonzero residual
    alpha, N, l = 1e-3, 3, 1
    p = PotentialParams(v1=1.0, alpha=alpha)
    E = energy(p, QuantumNumbers(N - l - 1, l))
    L = l * (l + 1)
    residual = E + 1 / (2 * N * N) + alpha / 2 + alpha * alpha * N * N / 8
    expected = alpha ** 2 * L / 4 - alpha ** 2 * L ** 2 / (8 * N ** 2) + alpha * L / (2 * N ** 2)
    assert residual == pytest.approx(expected, rel=1e-8)


@settings(max_examples=50)
@given(st.floats(0.01, 2.0), st.floats(-1.0, 1.0), st.floats(1e-3, 0.5),
       st.floats(0.5, 2.0), st.floats(0.5, 2.0), st.integers(0, 4), st.integers(0, 4))
def test_hellmann_and_yukawa_reductions_bit_identical(v1, B, alpha, mu, hbar, n, l):
    qn = QuantumNumbers(n, l)
    hel = PotentialParams(v1=v1, B=B, alpha=alpha, mu=mu, hbar=hbar, kind=Kind.HELLMANN)
    assert energy(hel, qn) == special_case_energy(Kind.HELLMANN, hel, qn)
    yuk = PotentialParams(B=B, alpha=alpha, mu=mu, hbar=hbar, kind=Kind.YUKAWA)
    assert energy(yuk, qn) == special_case_energy(Kind.YUKAWA, yuk, qn)


@settings(max_examples=30)
@given(st.floats(0.0, 0.1), st.floats(1e-3, 0.5), st.integers(0, 3), st.integers(0, 3))
def test_screened_hyperbolic_reduction(v2, alpha, n, l):
    p = PotentialParams(v2=v2, alpha=alpha, kind=Kind.SCREENED_HYPERBOLIC)
    assume(discriminant(p, l) >= 0)
    qn = QuantumNumbers(n, l)
    assert energy(p, qn) == special_case_energy(Kind.SCREENED_HYPERBOLIC, p, qn)


def test_coulomb_special_case():
    p = PotentialParams(B=1.0, kind=Kind.COULOMB)
    assert special_case_energy(Kind.COULOMB, p, QuantumNumbers(0, 0)) == -0.5
    assert special_case_energy(Kind.COULOMB, p, QuantumNumbers(1, 1)) == -0.5 / 9
    with pytest.raises(DomainError):
        special_case_energy(Kind.HELLMANN, p, QuantumNumbers(0, 0))


def test_energy_is_deterministic_and_vectorizes_over_rho():
    red = thermo_reduction(BOUND, 1)
    rho = red.delta + np.arange(4)
    np.testing.assert_array_equal(red.energy_at(rho),
                                  [energy(BOUND, QuantumNumbers(n, 1)) for n in range(4)])
