"""Potential family, parameter validation and the Pekeris-type approximants."""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, ValidationError

# below this alpha*r the approximants switch to their series limits
SERIES_THRESHOLD = 1e-8


class Kind(str, enum.Enum):
    CPSEHP = "CPSEHP"
    HELLMANN = "Hellmann"
    YUKAWA = "Yukawa"
    SCREENED_HYPERBOLIC = "ScreenedHyperbolic"
    COULOMB = "Coulomb"


@dataclass(frozen=True)
class PotentialParams:
    """Inputs of V(r) = -v1/r + (B/r - v2 cosh(alpha)/r^2) exp(-alpha r).

    Units are the caller's; the defaults hbar = mu = 1 match the tables.
    """

    v1: float = 0.0
    v2: float = 0.0
    B: float = 0.0
    alpha: float = 0.0
    mu: float = 1.0
    hbar: float = 1.0
    kind: Kind = Kind.CPSEHP

    def with_(self, **changes):
        return replace(self, **changes)

    @property
    def coupling_scale(self):
        """2 mu / hbar^2."""
        return 2.0 * self.mu / self.hbar ** 2


@dataclass(frozen=True)
class CriticalityReport:
    l: int
    discriminant: float
    supercritical: bool


# the parameters forced to zero by each special case
_FORCED_ZERO = {
    Kind.CPSEHP: (),
    Kind.HELLMANN: ("v2",),
    Kind.YUKAWA: ("v1", "v2"),
    Kind.SCREENED_HYPERBOLIC: ("B", "v1"),
    Kind.COULOMB: ("alpha", "v1", "v2"),
}


def validate(params):
    """Check every invariant of ``params`` and return it unchanged.

    Raises :class:`ValidationError` listing all violations at once.
    Supercritical inverse-square coupling is not rejected here because it
    depends on l; see :func:`criticality`.
    """
    problems = []
    try:
        kind = Kind(params.kind)
    except ValueError:
        problems.append(("kind", f"unknown potential kind {params.kind!r}"))
        kind = None
    for name in ("v1", "v2", "B", "alpha", "mu", "hbar"):
        value = getattr(params, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            problems.append((name, f"must be a finite number, got {value!r}"))
    if problems:
        raise ValidationError(problems)
    if params.mu <= 0:
        problems.append(("mu", "must be > 0"))
    if params.hbar <= 0:
        problems.append(("hbar", "must be > 0"))
    if params.alpha < 0:
        problems.append(("alpha", "must be >= 0"))
    elif params.alpha == 0 and kind is not Kind.COULOMB:
        problems.append(("alpha", f"must be > 0 for kind {kind.value}"))
    if kind is not None:
        for name in _FORCED_ZERO[kind]:
            if getattr(params, name) != 0:
                problems.append((name, f"must be 0 for kind {kind.value}"))
    if problems:
        raise ValidationError(problems)
    if params.kind is not kind:
        params = replace(params, kind=kind)
    return params


def discriminant(params, l):
    """(l + 1/2)^2 - 2 mu v2 cosh(alpha) / hbar^2, the radicand inside delta."""
    return (l + 0.5) ** 2 - params.coupling_scale * params.v2 * math.cosh(params.alpha)


def criticality(params, l):
    if l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    disc = discriminant(params, l)
    return CriticalityReport(l=int(l), discriminant=disc, supercritical=disc < 0)


def potential_exact(params, r):
    """V(r) of the full potential; the special kinds only differ by zeroed terms."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("potential needs r > 0")
    a = params.alpha
    screened = (params.B / r - params.v2 * math.cosh(a) / r ** 2) * np.exp(-a * r)
    out = -params.v1 / r + screened
    return out if out.ndim else float(out)


def _check_pekeris(alpha, r):
    r = np.asarray(r, dtype=float)
    if not alpha > 0:
        raise DomainError(f"approximants need alpha > 0, got {alpha}")
    if np.any(r <= 0):
        raise DomainError("approximants need r > 0")
    return r


def pekeris_inverse_r(alpha, r):
    """alpha / (1 - exp(-alpha r)), the stand-in for 1/r."""
    r = _check_pekeris(alpha, r)
    x = alpha * r
    small = x < SERIES_THRESHOLD
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 / r * (1.0 + 0.5 * x), alpha / -np.expm1(-safe))
    return out if out.ndim else float(out)


def pekeris_inverse_r2(alpha, r):
    """alpha^2 / (1 - exp(-alpha r))^2, the stand-in for 1/r^2."""
    return pekeris_inverse_r(alpha, r) ** 2


def potential_approximated(params, l, r):
    """Effective potential with every 1/r and 1/r^2 replaced by the approximants.

    Includes the centrifugal term; this is the Hamiltonian the closed-form
    spectrum solves exactly.
    """
    r = np.asarray(r, dtype=float)
    a1 = pekeris_inverse_r(params.alpha, r)
    a2 = a1 * a1
    s = np.exp(-params.alpha * r)
    out = (
        -params.v1 * a1
        + params.B * a1 * s
        - params.v2 * math.cosh(params.alpha) * a2 * s
        + params.hbar ** 2 * l * (l + 1) * a2 / (2.0 * params.mu)
    )
    return out if np.ndim(out) else float(out)


def potential_exact_effective(params, l, r):
    """Exact potential plus the exact centrifugal barrier."""
    r = np.asarray(r, dtype=float)
    out = potential_exact(params, r) + params.hbar ** 2 * l * (l + 1) / (
        2.0 * params.mu * r ** 2
    )
    return out if np.ndim(out) else float(out)


# Parameter sets used throughout the tests and scripts.

# Parameters printed under the numerical tables (v2 = 0.2 is supercritical at l = 0).
TABLE_PARAMS = PotentialParams(v1=0.1, v2=0.2, B=0.2, alpha=0.01)

# Subcritical reference set; note B > v1 makes Q3 > 0.
P0 = PotentialParams(v1=0.1, v2=0.02, B=0.2, alpha=0.01)

# Attractive companion set (B < v1) whose closed-form levels are genuine
# eigenstates of the approximated Hamiltonian.
BOUND = PotentialParams(v1=1.2, v2=0.02, B=0.2, alpha=0.01)
