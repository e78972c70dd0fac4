"""Classical-limit vibrational thermodynamics over the band n in [0, lambda].

The partition function is Z(beta) = int_delta^(lambda+delta) exp(-beta E(rho)) d rho
with E(rho) = Q1 - Q2 (rho + Q3/rho)^2. Quadrature plus finite differences
of ln Z is the normative path; the erf/erfi closed forms are cross-checks.
Boltzmann's constant is 1.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import numerics
from .curves import PropertyCurve
from .errors import DomainError, NumericalError

QUAD_TOL = 1e-12
# relative rounding amplification above which a closed form is rejected
CANCELLATION_LIMIT = 1e-6


@dataclass(frozen=True)
class ThermoPoint:
    beta_t: float
    Z: float
    U: float
    S: float
    F: float
    C: float
    lnZ: float


@dataclass(frozen=True)
class ClosedFormAux:
    """The auxiliary aggregates of the printed closed forms (beta * Q2 < 0 only).

    aleph4..aleph8 reference an undefined symbol in the printed display and
    are left as None.
    """

    aleph: float
    aleph0: float
    aleph1: float
    aleph2: float
    aleph3: float
    Lambda1: float
    Lambda2: float
    Lambda3: float
    Lambda4: float
    Lambda5: float
    Lambda6: float
    aleph4: Optional[float] = None
    aleph5: Optional[float] = None
    aleph6: Optional[float] = None
    aleph7: Optional[float] = None
    aleph8: Optional[float] = None


def _band(red):
    if red.lam is None:
        raise DomainError("band partition function needs lambda (Q3 > 0)")
    return red.delta, red.delta + red.lam


def band_energies(red):
    """E at the two ends of the band; E increases along it."""
    lo, hi = _band(red)
    return red.energy_at(lo), red.energy_at(hi)


def _reference_energy(red, beta_t):
    # shift so that the exponent -beta (E - E_ref) is never positive
    e_lo, e_hi = band_energies(red)
    return e_lo if beta_t >= 0 else e_hi


def _weighted(red, beta_t, weight):
    lo, hi = _band(red)
    e_ref = _reference_energy(red, beta_t)

    def f(rho):
        e = red.energy_at(rho)
        return weight(e) * np.exp(-beta_t * (e - e_ref))

    return numerics.integrate(f, lo, hi, rel_tol=QUAD_TOL).value, e_ref


def log_partition(red, beta_t):
    if not math.isfinite(beta_t):
        raise DomainError("beta_t must be finite")
    if beta_t == 0:
        _band(red)
        return math.log(red.lam)
    value, e_ref = _weighted(red, beta_t, lambda e: 1.0)
    return math.log(value) - beta_t * e_ref


def partition(red, beta_t):
    return math.exp(log_partition(red, beta_t))


def energy_moments(red, beta_t):
    """(<E>, Var E) of the band distribution by direct quadrature."""
    z, _ = _weighted(red, beta_t, lambda e: 1.0)
    m1, _ = _weighted(red, beta_t, lambda e: e)
    mean = m1 / z
    var, _ = _weighted(red, beta_t, lambda e: (e - mean) ** 2)
    return mean, var / z


def band_average_energy(red):
    """Uniform average of E over rho in the band, the beta -> 0 limit of U."""
    lo, hi = _band(red)
    return numerics.integrate(red.energy_at, lo, hi, rel_tol=QUAD_TOL).value / red.lam


def fd_step(red, beta_t):
    """Finite-difference step in beta for derivatives of ln Z.

    ln Z varies on the scale 1/Delta E (band width) at small |beta| and on
    the scale |beta| beyond; a fixed fraction of that keeps truncation and
    rounding errors both well below 1e-6 relative.
    """
    e_lo, e_hi = band_energies(red)
    width = abs(e_hi - e_lo)
    natural = 1.0 / width if width > 0 else 1.0
    return 0.02 * max(natural, abs(beta_t))


def properties(red, beta_grid, h=None):
    points = []
    for b in beta_grid:
        b = float(b)
        if b == 0:
            raise DomainError("beta_t = 0 is excluded from property grids (F undefined)")
        step = fd_step(red, b) if h is None else h

        def f(x):
            return log_partition(red, x)

        ln_z = f(b)
        d1 = numerics.central_diff(f, b, step, richardson_levels=1)
        d2 = numerics.second_diff(f, b, step, richardson_levels=1, f_x=ln_z)
        U = -d1
        points.append(ThermoPoint(beta_t=b, Z=math.exp(ln_z), U=U, S=ln_z + b * U,
                                  F=-ln_z / b, C=b * b * d2, lnZ=ln_z))
    return points


def thermo_curve(red, beta_grid):
    points = properties(red, beta_grid)
    cols = {name: np.array([getattr(p, name) for p in points]) for name in "ZUSFC"}
    return PropertyCurve(x_name="beta", x=np.array([p.beta_t for p in points]), columns=cols,
                         header=f"l={red.l} band=[delta, lambda+delta] k=1")


def quantum_partition(params, l, beta_t, n_max=1000):
    """Diagnostic level sum over the enumerated closed-form states."""
    from .nu import enumerate_bound_states

    states = enumerate_bound_states(params, l, n_max)
    return math.fsum(math.exp(-beta_t * s.energy) for s in states)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _gauss_primitive_terms(a, b, x, real_branch):
    """Pieces of the primitive of exp(-(a x + b/x)^2) (or exp(+...)) at x.

    Returns [(log_scale, sign, value)] whose sum times sqrt(pi)/(4a) is the
    primitive. The real branch uses erf; the other erfi through Dawson's
    function, with its exp(y^2) factor kept in the log scale.
    """
    y1 = a * x + b / x
    y2 = a * x - b / x
    if real_branch:
        return [(0.0, numerics.erf(y1)), (-4.0 * a * b, numerics.erf(y2))]
    # erfi(y) = 2/sqrt(pi) exp(y^2) F(y)
    c = 2.0 / numerics.SQRT_PI
    return [(y1 * y1, c * numerics.dawson(y1)), (4.0 * a * b + y2 * y2, c * numerics.dawson(y2))]


def _log_sum(terms):
    """log |sum s_i exp(l_i)| and the cancellation factor sum|.| / |sum|."""
    top = max(l for l, v in terms if v != 0.0)
    parts = [v * math.exp(l - top) for l, v in terms]
    total = math.fsum(parts)
    mag = math.fsum(abs(p) for p in parts)
    if total <= 0.0:
        raise NumericalError("closed form lost all significant digits")
    return top + math.log(total), mag / total


def log_closed_form_partition(red, beta_t):
    """ln Z from the erf (beta Q2 < 0) or erfi (beta Q2 > 0) primitive."""
    lo, hi = _band(red)
    if beta_t == 0:
        raise DomainError("closed form needs beta_t != 0")
    p = -beta_t * red.Q2
    real_branch = p > 0
    a = math.sqrt(abs(p))
    b = a * red.Q3
    terms = []
    for x, sign in ((hi, 1.0), (lo, -1.0)):
        terms += [(l, sign * v) for l, v in _gauss_primitive_terms(a, b, x, real_branch)]
    log_bracket, amplification = _log_sum(terms)
    if amplification * numerics.EPS > CANCELLATION_LIMIT:
        raise NumericalError(f"closed form cancels by a factor {amplification:.3g}")
    return -beta_t * red.Q1 + 0.5 * math.log(math.pi) - math.log(4.0 * a) + log_bracket


def closed_form_partition(red, beta_t):
    return math.exp(log_closed_form_partition(red, beta_t))


def closed_form_aux(red, beta_t):
    _band(red)
    if not beta_t * red.Q2 < 0:
        raise DomainError("the aux aggregates are real only for beta_t * Q2 < 0")
    s = math.sqrt(-beta_t * red.Q2)
    d, lam = red.delta, red.lam
    top = d + lam
    aleph = math.sqrt(-beta_t * red.Q2 * red.Q3 ** 2)
    a0 = s * d
    a1 = s * top
    return ClosedFormAux(
        aleph=aleph,
        aleph0=a0,
        aleph1=a1,
        aleph2=a0 * d + 2.0 * d * lam * s + (lam * lam * s + aleph) / top,
        aleph3=2.0 * aleph * math.exp(2.0 * aleph * s) * numerics.SQRT_PI,
        Lambda1=a0 - aleph / d,
        Lambda2=a0 + aleph / d,
        Lambda3=a1 - aleph / top,
        Lambda4=a1 + aleph / top,
        Lambda5=math.exp(beta_t * red.Q2 * (d ** 4 + red.Q3 ** 2) / d ** 2) * d,
        Lambda6=math.exp(beta_t * red.Q2 * (top ** 4 + red.Q3 ** 2) / top ** 2) * d,
    )


def _gaussian_moments(p, x, kmax):
    """M_k(x) = int_0^x t^(2k) exp(-p t^2) dt for k = 0..kmax, any p != 0."""
    if p > 0:
        m0 = numerics.SQRT_PI / (2.0 * math.sqrt(p)) * numerics.erf(math.sqrt(p) * x)
    else:
        q = math.sqrt(-p)
        m0 = numerics.SQRT_PI / (2.0 * q) * numerics.erfi(q * x)
    out = [m0]
    e = math.exp(-p * x * x)
    for k in range(1, kmax + 1):
        out.append((2 * k - 1) / (2.0 * p) * out[-1] - x ** (2 * k - 1) * e / (2.0 * p))
    return out


def closed_form_moments(red, beta_t):
    """int E^j exp(-beta (E - Q1)) d rho over the band for j = 0, 1, 2.

    Uses d rho = (du + dt)/2 with u = rho + Q3/rho and t = rho - Q3/rho,
    for which E = Q1 - Q2 u^2 = Q1 - 4 Q2 Q3 - Q2 t^2; each half is a
    polynomial-times-Gaussian integral.
    """
    lo, hi = _band(red)
    p = -beta_t * red.Q2
    if p == 0:
        raise DomainError("closed-form moments need beta_t != 0")
    out = np.zeros(3)
    for var, shift, sign in (("u", 0.0, 1.0), ("t", 4.0 * red.Q3, 1.0)):
        if var == "u":
            x_lo, x_hi = lo + red.Q3 / lo, hi + red.Q3 / hi
        else:
            x_lo, x_hi = lo - red.Q3 / lo, hi - red.Q3 / hi
        # E = Q1 - Q2 (x^2 + shift); weight exp(-beta (E - Q1)) = exp(beta Q2 shift) exp(-p x^2)
        c = red.Q1 - red.Q2 * shift
        pref = math.exp(beta_t * red.Q2 * shift)

        def prim(x):
            s = math.copysign(1.0, x)
            m = _gaussian_moments(p, abs(x), 2)
            # E^j = sum binom(j, i) c^(j-i) (-Q2)^i x^(2i)
            return s * np.array([
                m[0],
                c * m[0] - red.Q2 * m[1],
                c * c * m[0] - 2.0 * c * red.Q2 * m[1] + red.Q2 ** 2 * m[2],
            ])

        out += sign * 0.5 * pref * (prim(x_hi) - prim(x_lo))
    return out


def closed_form_properties(red, beta_t):
    """Thermodynamic point from closed-form moments, for comparison only."""
    m = closed_form_moments(red, beta_t)
    if not m[0] > 0:
        raise NumericalError("closed-form moments lost significance")
    ln_z = log_closed_form_partition(red, beta_t)
    U = m[1] / m[0]
    var = m[2] / m[0] - U * U
    return ThermoPoint(beta_t=beta_t, Z=math.exp(ln_z), U=U, S=ln_z + beta_t * U,
                       F=-ln_z / beta_t, C=beta_t ** 2 * var, lnZ=ln_z)
