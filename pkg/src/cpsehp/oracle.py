"""Direct numerical solvers used as ground truth for the closed forms.

The radial equation -(hbar^2 / 2 mu) u'' + V_eff u = E u is discretized with
the three-point stencil on a uniform grid with Dirichlet ends, giving a
symmetric tridiagonal matrix whose lowest eigenvalues come from Sturm
bisection.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import numerics
from .errors import DimensionError, DomainError
from .model import discriminant, potential_approximated, potential_exact_effective

# e^(-alpha * beta_wf * r_max) below this sets the default box size
TAIL_LEVEL = 1e-10


@dataclass(frozen=True)
class GridConfig:
    r_min: float
    r_max: float
    n_points: int
    refinement: str = "single"  # or "richardson_pair"

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise DimensionError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.n_points < 100:
            raise DimensionError(f"n_points must be >= 100, got {self.n_points}")
        if self.refinement not in ("single", "richardson_pair"):
            raise DimensionError(f"unknown refinement {self.refinement!r}")

    @property
    def step(self):
        return (self.r_max - self.r_min) / (self.n_points + 1)

    def nodes(self, n_points=None):
        n = self.n_points if n_points is None else n_points
        h = (self.r_max - self.r_min) / (n + 1)
        return self.r_min + h * np.arange(1, n + 1)


def default_grid(params, n_points=4000, refinement="richardson_pair", beta_wf=None):
    """Grid with r_min = 1e-10/alpha and r_max from the slowest decay rate.

    ``beta_wf`` is the smallest decay exponent among the wanted states; when
    it is unknown the box extends to 80/alpha.
    """
    if not params.alpha > 0:
        raise DomainError("default grid needs alpha > 0; pass a GridConfig explicitly")
    a = params.alpha
    if beta_wf is not None and beta_wf > 0:
        r_max = -math.log(TAIL_LEVEL) / (a * beta_wf)
    else:
        r_max = 80.0 / a
    return GridConfig(r_min=1e-10 / a, r_max=r_max, n_points=n_points, refinement=refinement)


@dataclass(frozen=True)
class RadialSolution:
    energies: np.ndarray
    r: Optional[np.ndarray] = None
    # columns are unit-norm grid vectors (sum u^2 = 1), not L2 functions
    vectors: Optional[np.ndarray] = None
    coarse: Optional[np.ndarray] = None
    fine: Optional[np.ndarray] = None


def _effective(which, params, l):
    if which == "exact":
        return lambda r: potential_exact_effective(params, l, r)
    if which == "approximated":
        return lambda r: potential_approximated(params, l, r)
    raise DomainError(f"potential must be 'exact' or 'approximated', got {which!r}")


def _origin_correction(params, l, r, h):
    """Swap the 1/r^2 part of V_eff near the origin for its discrete image.

    Near r = 0 both Hamiltonians behave like (hbar^2/2mu) eta(eta-1)/r^2, so
    u ~ r^eta with non-integer eta. The plain stencil then converges only at
    first order. Replacing eta(eta-1)/r^2 by Delta_h(r^eta)/r^eta makes the
    discrete operator exact on the leading power and restores O(h^2).
    """
    disc = discriminant(params, l)
    if disc < 0:
        return 0.0
    eta = 0.5 + math.sqrt(disc)
    x = r / h
    discrete = ((x + 1.0) ** eta - 2.0 * x ** eta + np.abs(x - 1.0) ** eta) / (x ** eta * h * h)
    scale = params.hbar ** 2 / (2.0 * params.mu)
    return scale * (discrete - eta * (eta - 1.0) / (r * r))


def _solve_once(v_eff, params, grid, n_points, k, vectors, l=0, correct_origin=False):
    r = grid.nodes(n_points)
    h = (grid.r_max - grid.r_min) / (n_points + 1)
    kinetic = params.hbar ** 2 / (2.0 * params.mu * h * h)
    diag = 2.0 * kinetic + np.asarray(v_eff(r), dtype=float)
    if correct_origin:
        diag = diag + _origin_correction(params, l, r, h)
    off = np.full(n_points - 1, -kinetic)
    out = numerics.tridiag_smallest_eigen(diag, off, k, vectors=vectors)
    return (r, h) + (out if vectors else (out, None))


def solve_radial(which, params, l, grid, k, vectors=False, correct_origin=True):
    """The ``k`` lowest eigenvalues of the discretized radial Hamiltonian.

    With ``grid.refinement == "richardson_pair"`` the problem is solved on
    n and 2n points and the O(h^2) error is extrapolated away using the
    actual step ratio. ``correct_origin`` applies :func:`_origin_correction`.
    """
    if l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    v_eff = _effective(which, params, l)
    opts = dict(l=l, correct_origin=correct_origin)
    r, h, values, vecs = _solve_once(v_eff, params, grid, grid.n_points, k, vectors, **opts)
    if grid.refinement == "single":
        return RadialSolution(energies=values, r=r, vectors=vecs)
    r2, h2, values2, vecs2 = _solve_once(v_eff, params, grid, 2 * grid.n_points, k, vectors,
                                         **opts)
    extrapolated = (values2 * h * h - values * h2 * h2) / (h * h - h2 * h2)
    return RadialSolution(energies=extrapolated, r=r2, vectors=vecs2,
                          coarse=values, fine=values2)


def node_count(values, rel_floor=1e-8):
    """Sign changes of a sampled function, ignoring near-zero samples."""
    values = np.asarray(values, dtype=float)
    big = values[np.abs(values) > rel_floor * np.max(np.abs(values))]
    return int(np.count_nonzero(np.signbit(big[1:]) != np.signbit(big[:-1])))


def expectation_numeric(params, qn, E, observable, rel_tol=1e-8):
    """Integral of R(r)^2 * observable(r) over (0, inf) with the analytic R."""
    from .wavefun import radial_wavefunction, shape_exponents, support_scale

    shape_exponents(params, qn, E)
    scale = support_scale(params, qn, E)

    def integrand(r):
        return radial_wavefunction(params, qn, E, r) ** 2 * observable(r)

    res = numerics.integrate_semi_infinite(integrand, 0.0, scale=scale, rel_tol=rel_tol,
                                           threshold=1e-18)
    return res.value


@dataclass
class ConvergenceReport:
    which: str
    l: int
    rows: list = field(default_factory=list)
    orders: list = field(default_factory=list)
    richardson: Optional[np.ndarray] = None

    def order_estimate(self, state=0):
        return self.orders[-1][state] if self.orders else float("nan")


def convergence_report(params, l, grids, which="approximated", k=1, reference=None,
                       correct_origin=True):
    """Eigenvalues against grid size with the observed convergence order.

    ``grids`` share r_min and r_max and differ in n_points. Orders come from
    three consecutive grids; ``reference`` (optional, one value per state)
    adds an error column.
    """
    v_eff = _effective(which, params, l)
    rows = []
    for g in grids:
        _, h, values, _ = _solve_once(v_eff, params, g, g.n_points, k, False, l=l,
                                      correct_origin=correct_origin)
        row = {"n_points": g.n_points, "h": h, "energies": values}
        if reference is not None:
            row["errors"] = values - np.asarray(reference, dtype=float)
        rows.append(row)
    report = ConvergenceReport(which=which, l=l, rows=rows)
    for a, b, c in zip(rows, rows[1:], rows[2:]):
        d1 = np.abs(a["energies"] - b["energies"])
        d2 = np.abs(b["energies"] - c["energies"])
        with np.errstate(divide="ignore", invalid="ignore"):
            report.orders.append(np.log(d1 / d2) / math.log(a["h"] / b["h"]))
    if len(rows) >= 2:
        a, b = rows[-2], rows[-1]
        report.richardson = (b["energies"] * a["h"] ** 2 - a["energies"] * b["h"] ** 2) / (
            a["h"] ** 2 - b["h"] ** 2
        )
    return report
