"""Normalized radial wavefunctions R(r) = N s^beta (1-s)^eta P_n^(2beta, 2eta-1)(1-2s).

Here s = exp(-alpha r). The closed-form normalization is checked against
quadrature; a disagreement triggers a flagged renormalization, never a
silent one.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .curves import PropertyCurve
from .errors import DomainError, GridError
from .model import discriminant
from .nu import nu_intermediates

# relative disagreement between closed form and quadrature that triggers the fallback
FALLBACK_TOL = 1e-6


@dataclass(frozen=True)
class WavefunctionSpec:
    n: int
    l: int
    beta_wf: float
    eta: float
    norm: float
    # True when ``norm`` came from quadrature because the closed form disagreed
    renormalized: bool = False

    @property
    def jacobi_a(self):
        return 2.0 * self.beta_wf

    @property
    def jacobi_b(self):
        return 2.0 * self.eta - 1.0


def shape_exponents(params, qn, E):
    """(beta_wf, eta) with beta_wf^2 = eps^2 - delta_c^2 + l(l+1) and
    eta = (1 + sqrt(1 + 4l(l+1) - 4 chi2)) / 2."""
    if not E < 0:
        raise DomainError(f"wavefunction needs E < 0, got {E}")
    if discriminant(params, qn.l) < 0:
        raise DomainError(f"supercritical inverse-square coupling at l={qn.l}")
    m = nu_intermediates(params, qn.l, E)
    ll = qn.l * (qn.l + 1)
    b2 = m.eps_sq - m.delta_c_sq + ll
    w2 = 1.0 + 4.0 * ll - 4.0 * m.chi2
    if b2 < 0 or w2 < 0:
        raise DomainError(f"non-normalizable regime (beta^2={b2:.6g}, W^2={w2:.6g})")
    beta = math.sqrt(b2)
    if beta == 0:
        raise DomainError("beta_wf = 0: state does not decay")
    return beta, 0.5 * (1.0 + math.sqrt(w2))


def log_norm_closed_form(alpha, n, beta, eta):
    """ln N from the Jacobi weight integral over s in (0, 1).

    With x = 1 - 2s the norm integral becomes a Jacobi moment with weight
    (1-x)^(2 beta - 1) (1+x)^(2 eta), one power short of the orthogonality
    weight, which the three-term recurrence turns into a closed form:

        1/N^2 = Gamma(n+2b+1) Gamma(n+2e) (n+e) / (alpha n! Gamma(n+2b+2e) 2b (n+b+e))
    """
    lg = numerics.log_gamma
    ln_inv = (
        lg(n + 2 * beta + 1) + lg(n + 2 * eta) + math.log(n + eta)
        - math.log(alpha) - lg(n + 1) - lg(n + 2 * beta + 2 * eta)
        - math.log(2 * beta) - math.log(n + beta + eta)
    )
    return -0.5 * ln_inv


def log_norm_printed(alpha, n, beta, eta):
    """ln N of the printed closed form, kept for the comparison report.

    N^2 = 2 alpha n! Gamma(2b+2e+n) (2b+2e+2n) / (2^(2b+2e) Gamma(2b+n) Gamma(2e+n+1)),
    evaluated as written.
    """
    lg = numerics.log_gamma
    two = 2 * beta + 2 * eta
    ln_sq = (
        math.log(2 * alpha) + lg(n + 1) + lg(two + n) + math.log(two + 2 * n)
        - two * math.log(2.0) - lg(2 * beta + n) - lg(2 * eta + n + 1)
    )
    return 0.5 * ln_sq


def _unnormalized(alpha, n, beta, eta, r):
    r = np.asarray(r, dtype=float)
    s = np.exp(-alpha * r)
    one_minus = -np.expm1(-alpha * r)
    poly = numerics.jacobi(n, 2 * beta, 2 * eta - 1, 1.0 - 2.0 * s)
    with np.errstate(divide="ignore", invalid="ignore"):
        # log-space keeps s^beta from underflowing before the product
        mag = np.exp(beta * (-alpha * r) + eta * np.log(one_minus))
    return np.where(r > 0, mag * poly, 0.0)


def support_scale(params, qn, E):
    """A length over which R^2 is concentrated; used to seed tail cutoffs."""
    beta, eta = shape_exponents(params, qn, E)
    return (qn.n + eta + 1.0) / (params.alpha * beta)


def _quadrature_norm_sq(alpha, n, beta, eta):
    # integrate over s on (0, 1): int R^2 dr = int R(s)^2 ds / (alpha s)
    def f(s):
        x = 1.0 - 2.0 * s
        p = numerics.jacobi(n, 2 * beta, 2 * eta - 1, x)
        with np.errstate(divide="ignore"):
            w = np.exp((2 * beta - 1) * np.log(s) + 2 * eta * np.log1p(-s))
        return w * p * p / alpha

    return numerics.integrate(f, 0.0, 1.0, rel_tol=1e-12).value


def wavefunction_spec(params, qn, E, check=True):
    """Exponents and normalization, verified by quadrature when ``check``."""
    beta, eta = shape_exponents(params, qn, E)
    norm = math.exp(log_norm_closed_form(params.alpha, qn.n, beta, eta))
    renormalized = False
    if check:
        integral = norm * norm * _quadrature_norm_sq(params.alpha, qn.n, beta, eta)
        if abs(integral - 1.0) > FALLBACK_TOL:
            norm /= math.sqrt(integral)
            renormalized = True
    return WavefunctionSpec(n=qn.n, l=qn.l, beta_wf=beta, eta=eta, norm=norm,
                            renormalized=renormalized)


def normalization_constant(params, qn, E):
    return wavefunction_spec(params, qn, E).norm


def radial_wavefunction(params, qn, E, r, spec=None):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radial wavefunction needs r >= 0")
    if spec is None:
        spec = wavefunction_spec(params, qn, E, check=False)
    out = spec.norm * _unnormalized(params.alpha, qn.n, spec.beta_wf, spec.eta, r)
    return out if out.ndim else float(out)


def density_profile(params, qn, E, r_grid):
    r = np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size < 2 or np.any(np.diff(r) <= 0):
        raise GridError("r grid must be one-dimensional and strictly increasing")
    if r[0] < 0:
        raise GridError("r grid must start at r >= 0")
    spec = wavefunction_spec(params, qn, E)
    R = radial_wavefunction(params, qn, E, r, spec=spec)
    header = f"n={qn.n} l={qn.l} E={E!r}"
    if spec.renormalized:
        header += " renormalized_by_quadrature"
    return PropertyCurve(x_name="r", x=r, columns={"density": R * R}, header=header)


def radial_equation_residual(params, qn, E, r):
    """Residual of the approximated radial equation at the analytic R.

    In s = exp(-alpha r) the equation reads

        R''(s) + R'(s) / s + (-a s^2 + b s - c) R / (s^2 (1-s)^2) = 0

    with a = eps^2 - chi1, b = 2 eps^2 - delta_c^2 - chi1 + chi2 and
    c = eps^2 - delta_c^2 + l(l+1). The returned residual is multiplied by
    s^2 (1-s)^2 so it stays bounded.
    """
    spec = wavefunction_spec(params, qn, E, check=False)
    beta, eta, n = spec.beta_wf, spec.eta, qn.n
    m = nu_intermediates(params, qn.l, E)
    ll = qn.l * (qn.l + 1)
    a2 = m.eps_sq - m.chi1
    a1 = 2.0 * m.eps_sq - m.delta_c_sq - m.chi1 + m.chi2
    a0 = m.eps_sq - m.delta_c_sq + ll
    r = np.asarray(r, dtype=float)
    s = np.exp(-params.alpha * r)
    t = -np.expm1(-params.alpha * r)  # 1 - s
    x = 1.0 - 2.0 * s
    a, b = 2.0 * beta, 2.0 * eta - 1.0
    p = numerics.jacobi(n, a, b, x)
    dp = -2.0 * numerics.jacobi_deriv(n, a, b, x)
    d2p = 4.0 * (0.5 * (n + a + b + 1.0)) * numerics.jacobi_deriv(
        n - 1, a + 1.0, b + 1.0, x) if n >= 1 else np.zeros_like(x)
    # R = s^beta t^eta p  ->  R'/R and R''/R in terms of logarithmic derivatives
    g = beta / s - eta / t
    dg = -beta / s ** 2 - eta / t ** 2
    f = s ** beta * t ** eta
    R = f * p
    dR = f * (g * p + dp)
    d2R = f * ((g * g + dg) * p + 2.0 * g * dp + d2p)
    res = s * s * t * t * d2R + s * t * t * dR + (-a2 * s * s + a1 * s - a0) * R
    return spec.norm * res
