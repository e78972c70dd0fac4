"""Hellmann-Feynman expectation values dE/dq = <dH/dq>.

All observables refer to the Pekeris-approximated Hamiltonian whose
eigenpairs the closed form gives, so <1/r^2> means <A2> with
A2 = alpha^2 / (1 - e^(-alpha r))^2, and so on.
"""

import math
from dataclasses import dataclass

from . import numerics
from .errors import DomainError
from .model import discriminant
from .nu import energy_continuous, thermo_reduction

# finite-difference steps for the twins (relative for mu, B and v1)
FD_STEP = {"l": 1e-5, "mu": 1e-6, "B": 1e-6, "v1": 1e-6}


@dataclass(frozen=True)
class HftIntermediates:
    rho: float
    Q3: float
    Q6: float
    Q7: float
    D: float  # sqrt of the delta discriminant


def hft_intermediates(params, qn):
    red = thermo_reduction(params, qn.l)
    rho = qn.n + red.delta
    D = red.delta - 0.5
    if D == 0:
        raise DomainError("HFT in l needs a strictly subcritical discriminant")
    drho_dl = (2 * qn.l + 1) / (2.0 * D)
    q6 = ((2 * qn.l + 1) * rho - red.Q3 * drho_dl) / rho ** 2
    q7 = rho + red.Q3 / rho
    return HftIntermediates(rho=rho, Q3=red.Q3, Q6=q6, Q7=q7, D=D)


def expval_inv_r2(params, qn):
    """<A2> = (2 mu / (hbar^2 (2l+1))) dE/dl."""
    m = hft_intermediates(params, qn)
    a = params.alpha
    drho_dl = (2 * qn.l + 1) / (2.0 * m.D)
    return a * a - a * a * m.Q7 * (drho_dl + m.Q6) / (2.0 * (2 * qn.l + 1))


def expval_screened_inv_r(params, qn):
    """<A1 e^(-alpha r)> = dE/dB."""
    m = hft_intermediates(params, qn)
    return -params.alpha * m.Q7 / (2.0 * m.rho)


def expval_inv_r(params, qn):
    """<A1> = -dE/dv1."""
    m = hft_intermediates(params, qn)
    return params.alpha - params.alpha * m.Q7 / (2.0 * m.rho)


def expval_T(params, qn):
    """<T> = -mu dE/dmu, the centrifugal term counted as kinetic."""
    m = hft_intermediates(params, qn)
    h2 = params.hbar ** 2
    a = params.alpha
    mu = params.mu
    ll = qn.l * (qn.l + 1)
    drho = -params.v2 * math.cosh(a) / (h2 * m.D)
    dq3 = 2.0 * (params.B - params.v1) / (h2 * a)
    dq7 = drho + (dq3 * m.rho - m.Q3 * drho) / m.rho ** 2
    return (
        h2 * a * a * ll / (2.0 * mu)
        - h2 * a * a * m.Q7 ** 2 / (8.0 * mu)
        + 0.25 * h2 * a * a * m.Q7 * dq7
    )


def expval_p2(params, qn):
    return 2.0 * params.mu * expval_T(params, qn)


def hft_fd_twin(params, qn, which, h=None, richardson_levels=1):
    """Richardson central difference of the closed-form energy in one parameter.

    Returns dE/dq itself; :func:`fd_observable` converts it to the matching
    expectation value.
    """
    if which not in FD_STEP:
        raise DomainError(f"which must be one of {sorted(FD_STEP)}, got {which!r}")
    if which == "l":
        x0 = float(qn.l)
        step = FD_STEP["l"] if h is None else h
        if discriminant(params, x0 - step) < 0 or discriminant(params, x0 + step) < 0:
            raise DomainError("finite-difference stencil crosses the supercritical boundary")

        def f(x):
            return energy_continuous(params, qn.n, x)
    else:
        x0 = getattr(params, which)
        scale = x0 if which == "mu" else max(1.0, abs(x0))
        step = FD_STEP[which] * scale if h is None else h

        def f(x):
            return energy_continuous(params.with_(**{which: x}), qn.n, qn.l)
    return numerics.central_diff(f, x0, step, richardson_levels=richardson_levels)


def fd_observable(params, qn, which):
    """The expectation value that the ``which``-derivative of E represents."""
    d = hft_fd_twin(params, qn, which)
    if which == "l":
        return 2.0 * params.mu * d / (params.hbar ** 2 * (2 * qn.l + 1))
    if which == "B":
        return d
    if which == "v1":
        return -d
    return -params.mu * d
