"""Superstatistics with the quadratic deformed Boltzmann factor.

B(E) = exp(-beta E) (1 + q beta^2 E^2 / 2). The partition function integrates
B(E(rho)) over the band [delta, lambda + delta] by default; the semi-infinite
range [delta, inf) is available when beta * Q2 < 0 so that it converges.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .curves import PropertyCurve
from .errors import DomainError, NumericalError
from .thermo import QUAD_TOL, fd_step

MODES = ("band", "semi_infinite")
REPORT_NOTE = "integration range: band [delta, lambda+delta] unless semi_infinite"


@dataclass(frozen=True)
class SuperstatParams:
    q: float
    beta_t: float
    upper_mode: str = "band"

    def __post_init__(self):
        if self.upper_mode not in MODES:
            raise DomainError(f"upper_mode must be one of {MODES}, got {self.upper_mode!r}")


@dataclass(frozen=True)
class SuperstatPoint:
    q: float
    beta_t: float
    Z: float
    U: float
    S: float
    F: float
    C: float
    lnZ: float


def deformed_boltzmann(E, beta_t, q):
    E = np.asarray(E, dtype=float)
    out = np.exp(-beta_t * E) * (1.0 + 0.5 * q * beta_t ** 2 * E * E)
    return out if out.ndim else float(out)


def _range(red, mode, beta_t):
    lo = red.delta
    if mode == "band":
        if red.lam is None:
            raise DomainError("band mode needs lambda (Q3 > 0)")
        return lo, lo + red.lam
    if not beta_t * red.Q2 < 0:
        raise DomainError("semi-infinite superstatistics diverges unless beta_t * Q2 < 0")
    return lo, math.inf


def log_superstat_partition(red, ss):
    beta, q = ss.beta_t, ss.q
    lo, hi = _range(red, ss.upper_mode, beta)
    if math.isinf(hi):
        # exp(-beta E) peaks where E is largest: rho = sqrt(Q3) when that lies past delta
        peak = math.sqrt(red.Q3) if red.Q3 > lo * lo else lo
        e_ref = red.energy_at(peak)
    else:
        e_lo, e_hi = red.energy_at(lo), red.energy_at(hi)
        e_ref = min(e_lo, e_hi) if beta >= 0 else max(e_lo, e_hi)

    def f(rho):
        e = red.energy_at(rho)
        return np.exp(-beta * (e - e_ref)) * (1.0 + 0.5 * q * beta * beta * e * e)

    if math.isinf(hi):
        scale = 1.0 / math.sqrt(-beta * red.Q2)
        value = numerics.integrate_semi_infinite(f, lo, scale=scale, rel_tol=QUAD_TOL).value
    else:
        value = numerics.integrate(f, lo, hi, rel_tol=QUAD_TOL).value
    if not value > 0:
        raise DomainError("superstatistics partition function is not positive")
    return math.log(value) - beta * e_ref


def superstat_partition(red, ss):
    return math.exp(log_superstat_partition(red, ss))


def closed_form_superstat_partition(red, beta_t, q):
    """The printed closed form, evaluated literally (report-only).

    At q = 0 it equals -sqrt(pi)/(2s) exp(-beta Q1) with s = sqrt(-beta Q2),
    the negative of the Gaussian integral over u in [0, inf); it is not
    expected to agree with either quadrature mode.
    """
    if not beta_t * red.Q2 < 0:
        raise DomainError("closed form needs beta_t * Q2 < 0")
    b, Q1, Q2, Q3 = beta_t, red.Q1, red.Q2, red.Q3
    s = math.sqrt(-b * Q2)
    aleph = math.sqrt(-b * Q2 * Q3 ** 2)
    bracket = (
        -32.0 * q * b ** 3 * Q2 ** 3 * Q3 ** 3
        + (8.0 + 3.0 * q + 4.0 * q * b * Q1 + 4.0 * q * b * b * Q1 * Q1) * s * aleph
        + 8.0 * q * (1.0 + 2.0 * b * Q1) * (-b * Q2) ** 1.5 * Q3 * aleph
        + 8.0 * q * q * b * b * Q2 * Q2 * Q3 * Q3 * (1.0 + 2.0 * b * Q1 + 4.0 * s * aleph)
    )
    expo = -b * Q1 + 2.0 * b * Q2 * Q3 - 2.0 * s * aleph
    value = math.exp(expo) * numerics.SQRT_PI * bracket / (16.0 * aleph * b * Q2)
    if not math.isfinite(value):
        raise NumericalError("closed-form superstatistics value overflowed")
    return value


def superstat_properties(red, ss_grid, h=None):
    """U_s, S_s, F_s, C_s from finite differences of ln Z_s in beta at fixed q."""
    points = []
    for ss in ss_grid:
        b = float(ss.beta_t)
        if b == 0:
            raise DomainError("beta_t = 0 is excluded from property grids (F undefined)")
        step = h
        if step is None:
            step = fd_step(red, b) if ss.upper_mode == "band" else 1e-3 * abs(b)

        def f(x, ss=ss):
            return log_superstat_partition(red, SuperstatParams(ss.q, x, ss.upper_mode))

        ln_z = f(b)
        U = -numerics.central_diff(f, b, step, richardson_levels=1)
        d2 = numerics.second_diff(f, b, step, richardson_levels=1, f_x=ln_z)
        points.append(SuperstatPoint(q=ss.q, beta_t=b, Z=math.exp(ln_z), U=U,
                                     S=ln_z + b * U, F=-ln_z / b, C=b * b * d2, lnZ=ln_z))
    return points


def superstat_curve(red, ss_grid, x_name="beta"):
    points = superstat_properties(red, ss_grid)
    x = np.array([getattr(p, "beta_t" if x_name == "beta" else "q") for p in points])
    cols = {name: np.array([getattr(p, name) for p in points]) for name in "ZUSFC"}
    modes = sorted({ss.upper_mode for ss in ss_grid})
    return PropertyCurve(x_name=x_name, x=x, columns=cols,
                         header=f"l={red.l} mode={'/'.join(modes)} ({REPORT_NOTE}) k=1")
