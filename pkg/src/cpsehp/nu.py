"""Parametric Nikiforov-Uvarov constants and the closed-form spectrum.

The normative energy is the compact form

    E = Q1 - Q2 * (rho + Q3 / rho)**2,   rho = n + delta,

with Q1, Q2, Q3, delta from :func:`thermo_reduction`. The quantization
condition is kept only as a residual check.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .model import Kind, discriminant


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        for name in ("n", "l"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {value}")


@dataclass(frozen=True)
class NuIntermediates:
    eps_sq: float
    delta_c_sq: float
    chi1: float
    chi2: float


@dataclass(frozen=True)
class NuConstants:
    omega1: float
    omega2: float
    omega3: float
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float


@dataclass(frozen=True)
class ThermoReduction:
    """Compact-form constants for one l. ``lam`` is None when Q3 <= 0."""

    l: float
    Q1: float
    Q2: float
    Q3: float
    delta: float
    lam: Optional[float]

    def energy_at(self, rho):
        """E(rho) of the compact form; ``rho`` may be an array."""
        return _compact_energy(self.Q1, self.Q2, self.Q3, rho)


@dataclass(frozen=True)
class BoundState:
    n: int
    l: int
    energy: float
    beta_wf: float
    eta: float
    # True when the principal-branch quantization condition holds, i.e. the
    # closed-form level is a normalizable eigenstate of the approximated problem
    nu_consistent: bool


def _compact_energy(q1, q2, q3, rho):
    q7 = rho + q3 / rho
    return q1 - q2 * q7 * q7


def _require_alpha(params):
    if not params.alpha > 0:
        raise DomainError("closed form needs alpha > 0; use special_case_energy for Coulomb")


def _delta(params, l):
    disc = discriminant(params, l)
    if disc < 0:
        raise DomainError(
            f"supercritical inverse-square coupling at l={l}: discriminant {disc:.6g} < 0"
        )
    return 0.5 + math.sqrt(disc)


def _q_constants(params, l):
    _require_alpha(params)
    h2 = params.hbar ** 2
    a = params.alpha
    ll = l * (l + 1)
    q1 = h2 * a * a * ll / (2.0 * params.mu) - params.v1 * a
    q2 = h2 * a * a / (8.0 * params.mu)
    q3 = params.coupling_scale * (params.B - params.v1) / a + ll
    return q1, q2, q3


def thermo_reduction(params, l):
    q1, q2, q3 = _q_constants(params, l)
    delta = _delta(params, l)
    lam = math.sqrt(q3) - delta if q3 > 0 else None
    return ThermoReduction(l=l, Q1=q1, Q2=q2, Q3=q3, delta=delta, lam=lam)


def energy_continuous(params, n, l):
    """Closed-form energy with n and l treated as real numbers."""
    q1, q2, q3 = _q_constants(params, l)
    return _compact_energy(q1, q2, q3, n + _delta(params, l))


def energy(params, qn):
    return energy_continuous(params, qn.n, qn.l)


def nu_intermediates(params, l, E):
    _require_alpha(params)
    k = params.coupling_scale
    a = params.alpha
    return NuIntermediates(
        eps_sq=-k * E / a ** 2,
        delta_c_sq=k * params.v1 / a,
        chi1=k * params.B / a,
        chi2=k * params.v2 * math.cosh(a),
    )


def nu_constants(params, qn, E):
    if not E < 0:
        raise DomainError(f"NU constants need E < 0, got {E}")
    m = nu_intermediates(params, qn.l, E)
    ll = qn.l * (qn.l + 1)
    omega1 = m.eps_sq - m.chi1
    omega2 = 2.0 * m.eps_sq - m.delta_c_sq - m.chi1 + m.chi2
    omega3 = m.eps_sq - m.delta_c_sq + ll
    c1 = c2 = c3 = 1.0
    c4 = 0.5 * (1.0 - c1)
    c5 = 0.5 * (c2 - 2.0 * c3)
    c6 = c5 * c5 + omega1
    c7 = 2.0 * c4 * c5 - omega2
    c8 = c4 * c4 + omega3
    c9 = c3 * c7 + c3 * c3 * c8 + c6
    if c8 < 0 or c9 < 0:
        raise DomainError(f"NU constants need c8, c9 >= 0 (c8={c8:.6g}, c9={c9:.6g})")
    r8, r9 = math.sqrt(c8), math.sqrt(c9)
    return NuConstants(
        omega1=omega1, omega2=omega2, omega3=omega3,
        c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, c6=c6, c7=c7, c8=c8, c9=c9,
        c10=c1 + 2.0 * c4 + 2.0 * r8,
        c11=c2 - 2.0 * c5 + 2.0 * (r9 + c3 * r8),
        c12=c4 + r8,
        c13=c5 - (r9 + c3 * r8),
    )


def quantization_residual(params, qn, E):
    """Left side of the NU energy condition at E, principal square roots.

    Zero exactly when E is a closed-form level whose decay exponent comes out
    positive; for levels with rho + Q3/rho > 0 it equals 4 rho beta_wf instead.
    """
    c = nu_constants(params, qn, E)
    n = qn.n
    r8, r9 = math.sqrt(c.c8), math.sqrt(c.c9)
    return (
        c.c2 * n
        - (2 * n + 1) * c.c5
        + (2 * n + 1) * (r9 + c.c3 * r8)
        + n * (n - 1) * c.c3
        + c.c7
        + 2.0 * c.c3 * c.c8
        + 2.0 * r8 * r9
    )


def enumerate_bound_states(params, l, n_max, physical_only=False):
    """Closed-form levels n = 0..n_max for one l.

    When lambda is defined (Q3 > 0) n is also capped at floor(lambda). A level
    is listed when E < 0 and both wavefunction exponents are real and
    positive. ``physical_only`` further keeps only ``nu_consistent`` levels.
    """
    red = thermo_reduction(params, l)
    top = n_max if red.lam is None else min(n_max, math.floor(red.lam))
    eta = red.delta
    states = []
    for n in range(0, top + 1):
        rho = n + red.delta
        q7 = rho + red.Q3 / rho
        E = _compact_energy(red.Q1, red.Q2, red.Q3, rho)
        if not E < 0:
            continue
        m = nu_intermediates(params, l, E)
        c8 = m.eps_sq - m.delta_c_sq + l * (l + 1)
        if not c8 > 0 or not eta > 0:
            continue
        state = BoundState(n=n, l=l, energy=E, beta_wf=math.sqrt(c8), eta=eta,
                           nu_consistent=q7 < 0)
        if physical_only and not state.nu_consistent:
            continue
        states.append(state)
    return states


def physical_band_edge(params, l):
    """Largest real n with a normalizable closed-form level, sqrt(-Q3) - delta.

    Defined only for Q3 < 0; past it the levels sit above the asymptote Q1.
    """
    red = thermo_reduction(params, l)
    if red.Q3 >= 0:
        return None
    return math.sqrt(-red.Q3) - red.delta


def special_case_energy(kind, params, qn):
    """Energy from the printed special-case formulas."""
    kind = Kind(kind)
    if Kind(params.kind) is not kind:
        raise DomainError(f"params are of kind {params.kind}, not {kind.value}")
    n, l = qn.n, qn.l
    if kind is Kind.COULOMB:
        # dimensionally consistent form (hbar^2 in the denominator)
        return -params.mu * params.B ** 2 / (2.0 * params.hbar ** 2 * (n + l + 1) ** 2)
    _require_alpha(params)
    h2 = params.hbar ** 2
    a = params.alpha
    ll = l * (l + 1)
    q2 = h2 * a * a / (8.0 * params.mu)
    if kind is Kind.HELLMANN:
        q1 = h2 * a * a * ll / (2.0 * params.mu) - params.v1 * a
        q3 = params.coupling_scale * (params.B - params.v1) / a + ll
        return _compact_energy(q1, q2, q3, n + l + 1.0)
    if kind is Kind.YUKAWA:
        q1 = h2 * a * a * ll / (2.0 * params.mu)
        q3 = params.coupling_scale * params.B / a + ll
        return _compact_energy(q1, q2, q3, n + l + 1.0)
    if kind is Kind.SCREENED_HYPERBOLIC:
        q1 = h2 * a * a * ll / (2.0 * params.mu)
        return _compact_energy(q1, q2, float(ll), n + _delta(params, l))
    raise DomainError("CPSEHP has no special-case formula; use energy()")


def nu_consistent(params, qn):
    """True when rho + Q3/rho < 0, i.e. the closed-form level is a genuine
    normalizable eigenstate of the approximated Hamiltonian."""
    red = thermo_reduction(params, qn.l)
    rho = qn.n + red.delta
    return rho + red.Q3 / rho < 0
