"""Special functions and numerical kernels used by every other module.

Everything here is self-contained (numpy for arrays only) so that the
closed forms elsewhere in the package are checked against code that
shares nothing with them.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NonConvergence

EPS = np.finfo(float).eps
SQRT_PI = math.sqrt(math.pi)
EULER_GAMMA = 0.57721566490153286061

# ---------------------------------------------------------------------------
# log-gamma
# ---------------------------------------------------------------------------

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _zeta_minus_one(s, n_terms=20):
    """zeta(s) - 1 for integer s >= 2 by Euler-Maclaurin summation."""
    n = float(n_terms)
    total = sum(j ** -s for j in range(2, n_terms))
    total += n ** (1 - s) / (s - 1) + 0.5 * n ** -s
    bernoulli = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730)
    rising = float(s)
    for m, b2m in enumerate(bernoulli, start=1):
        if m > 1:
            rising *= (s + 2 * m - 3) * (s + 2 * m - 2)
        total += b2m / math.factorial(2 * m) * rising * n ** (-s - 2 * m + 1)
    return total


_ZETA_M1 = tuple(_zeta_minus_one(k) for k in range(2, 60))


def _lgamma_1p(z):
    """ln Gamma(1 + z) for |z| <= 0.5 from the zeta-function series."""
    acc = 0.0
    zk = -z
    for k, zm1 in enumerate(_ZETA_M1, start=2):
        zk *= -z
        term = zm1 * zk / k
        acc += term
        if abs(term) < 1e-18 * max(abs(acc), 1e-300):
            break
    # sum_{k>=2} (-z)^k / k = z - log1p(z)
    return -EULER_GAMMA * z + (z - math.log1p(z)) + acc


def _lgamma_lanczos(x):
    x -= 1.0
    a = _LANCZOS[0]
    for i in range(1, 9):
        a += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(a)


def log_gamma(x):
    """Natural log of the gamma function for real ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    shift = 0.0
    while x < 0.5:
        shift -= math.log(x)
        x += 1.0
    if x <= 1.5:
        return shift + _lgamma_1p(x - 1.0)
    if x <= 2.5:
        return shift + math.log1p(x - 2.0) + _lgamma_1p(x - 2.0)
    return shift + _lgamma_lanczos(x)


# ---------------------------------------------------------------------------
# Jacobi polynomials
# ---------------------------------------------------------------------------


def jacobi(n, a, b, x):
    """P_n^(a,b)(x) by the three-term recurrence; ``x`` may be an array."""
    if n < 0 or int(n) != n:
        raise DomainError(f"jacobi degree must be a non-negative integer, got {n}")
    if not (a > -1.0 and b > -1.0):
        raise DomainError(f"jacobi parameters must exceed -1, got a={a}, b={b}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    ab = a + b
    for k in range(2, n + 1):
        c = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        p, p_prev = ((a2 + a3 * x) * p - a4 * p_prev) / a1, p
    return p if p.ndim else float(p)


def jacobi_deriv(n, a, b, x):
    """d/dx P_n^(a,b)(x)."""
    if n == 0:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return out if out.ndim else 0.0
    return 0.5 * (n + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x)


# ---------------------------------------------------------------------------
# Error function family
# ---------------------------------------------------------------------------


def _erf_series(x):
    # erf(x) = 2x/sqrt(pi) exp(-x^2) sum (2x^2)^k / (2k+1)!!, all terms positive
    x2 = x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= 2.0 * x2 / (2 * k + 1)
        total += term
        if term < 1e-17 * total:
            break
    return 2.0 * x / SQRT_PI * math.exp(-x2) * total


def _erfc_cf(x):
    """erfc(x) for x >= 2.5 from the Laplace continued fraction (modified Lentz)."""
    tiny = 1e-300
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    f = x
    c = x
    d = 0.0
    for k in range(1, 500):
        ak = 0.5 * k
        d = x + ak * d
        d = tiny if d == 0.0 else d
        c = x + ak / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (SQRT_PI * f)


def erf(x):
    """Error function, absolute accuracy ~1e-16."""
    x = float(x)
    if x < 0.0:
        return -erf(-x)
    if x < 2.5:
        return _erf_series(x)
    if x >= 27.0:
        return 1.0
    return 1.0 - _erfc_cf(x)


def erfc(x):
    x = float(x)
    if x < 2.5:
        return 1.0 - erf(x)
    if x > 27.0:
        return 0.0
    return _erfc_cf(x)


def dawson(x):
    """Dawson's integral F(x) = exp(-x^2) int_0^x exp(t^2) dt."""
    x = float(x)
    if x < 0.0:
        return -dawson(-x)
    if x == 0.0:
        return 0.0
    x2 = x * x
    if x < 6.0:
        # exp(-x^2) * sum x^(2k+1) / (k! (2k+1)); positive terms, no cancellation
        term = x
        total = x
        k = 0
        while True:
            k += 1
            term *= x2 / k
            contrib = term / (2 * k + 1)
            total += contrib
            if contrib <= 1e-17 * total:
                break
        return math.exp(-x2) * total
    # asymptotic series 1/(2x) sum (2k-1)!! / (2x^2)^k, truncated at its smallest term
    inv = 1.0 / (2.0 * x2)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) * inv
        if nxt >= term or nxt <= 1e-17 * total:
            break
        term = nxt
        total += term
    return total / (2.0 * x)


def erfi(x):
    """Imaginary error function erfi(x) = -i erf(ix), via Dawson's integral."""
    x = float(x)
    return 2.0 * math.exp(x * x) * dawson(x) / SQRT_PI


# ---------------------------------------------------------------------------
# Adaptive quadrature (Gauss-Kronrod 7/15)
# ---------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
# full 15-point abscissae on [-1, 1] and matching weights
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[[13, 11, 9]] = _WG[:3]
_GAUSS_W[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool = True


def _gk15(f, a, b):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(center + half * _NODES), dtype=float)
    if fx.shape != _NODES.shape:
        fx = np.broadcast_to(fx, _NODES.shape)
    kronrod = half * float(np.dot(_KRONROD_W, fx))
    gauss = half * float(np.dot(_GAUSS_W, fx))
    mean = kronrod / (b - a) if b != a else 0.0
    resabs = abs(half) * float(np.dot(_KRONROD_W, np.abs(fx)))
    resasc = abs(half) * float(np.dot(_KRONROD_W, np.abs(fx - mean)))
    err = abs(kronrod - gauss)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    if not np.all(np.isfinite(fx)):
        raise DomainError("integrand returned a non-finite value")
    return kronrod, err


def integrate(f, a, b, rel_tol=1e-10, abs_tol=0.0, max_evaluations=1_000_000,
              raise_on_failure=True):
    """Globally adaptive Gauss-Kronrod quadrature of ``f`` over [a, b].

    ``f`` is called with a numpy array of abscissae and must return an array
    of the same shape. Endpoints are never evaluated, so integrable endpoint
    singularities are handled by subdivision.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    value, err = _gk15(f, a, b)
    evaluations = 15
    heap = [(-err, a, b, value, err)]
    total, total_err = value, err
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if evaluations + 30 > max_evaluations:
            if raise_on_failure:
                raise NonConvergence(
                    f"quadrature on [{a}, {b}] stalled at error {total_err:.3e}"
                )
            return QuadratureResult(total, total_err, evaluations, False)
        _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or (hi - lo) < 100 * EPS * max(abs(lo), abs(hi)):
            # cannot split further; accept what we have
            heapq.heappush(heap, (0.0, lo, hi, v, e))
            if raise_on_failure:
                raise NonConvergence("quadrature interval collapsed below resolution")
            return QuadratureResult(total, total_err, evaluations, False)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evaluations += 30
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        # re-sum to avoid drift from repeated add/subtract
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(item[4] for item in heap)
    return QuadratureResult(total, total_err, evaluations)


def tail_cutoff(f, a, scale, threshold=1e-16, max_doublings=200):
    """Smallest probed x = a + scale * 2**k beyond which |f| < threshold * peak.

    The peak is taken over the probes themselves plus a coarse sample of
    [a, a + scale], so ``f`` should be unimodal or decreasing past ``a``.
    """
    xs = a + scale * np.linspace(0.0, 1.0, 33)[1:]
    peak = float(np.max(np.abs(f(xs))))
    x = a + scale
    for _ in range(max_doublings):
        fx = abs(float(np.asarray(f(np.array([x])))[0]))
        peak = max(peak, fx)
        if fx < threshold * peak:
            return x
        x = a + 2.0 * (x - a)
    raise NonConvergence("integrand does not decay on the semi-infinite range")


def integrate_semi_infinite(f, a, scale=1.0, rel_tol=1e-10, threshold=1e-16):
    """Integrate over [a, inf) by truncating where the integrand falls below
    ``threshold`` times its peak."""
    upper = tail_cutoff(f, a, scale, threshold)
    return integrate(f, a, upper, rel_tol=rel_tol)


# ---------------------------------------------------------------------------
# Finite differences with Richardson extrapolation
# ---------------------------------------------------------------------------


def _richardson(estimates, order=2):
    """Extrapolate estimates taken at h, h/2, h/4, ... for an even-order scheme."""
    table = [list(estimates)]
    for m in range(1, len(estimates)):
        factor = 2.0 ** (order * m)
        prev = table[-1]
        table.append([
            prev[j + 1] + (prev[j + 1] - prev[j]) / (factor - 1.0)
            for j in range(len(prev) - 1)
        ])
    return table[-1][0]


def central_diff(f, x, h, richardson_levels=1):
    """First derivative of ``f`` at ``x``, error O(h^(2 + 2*levels))."""
    estimates = []
    for j in range(richardson_levels + 1):
        step = h / 2.0 ** j
        estimates.append((f(x + step) - f(x - step)) / (2.0 * step))
    return _richardson(estimates)


def second_diff(f, x, h, richardson_levels=1, f_x=None):
    """Second derivative of ``f`` at ``x``, error O(h^(2 + 2*levels))."""
    fx = f(x) if f_x is None else f_x
    estimates = []
    for j in range(richardson_levels + 1):
        step = h / 2.0 ** j
        estimates.append((f(x + step) - 2.0 * fx + f(x - step)) / step ** 2)
    return _richardson(estimates)


# ---------------------------------------------------------------------------
# Symmetric tridiagonal eigenvalues by Sturm-sequence bisection
# ---------------------------------------------------------------------------


def sturm_count(diag, offdiag, x):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    diag = [float(v) for v in diag]
    off2 = [float(v) ** 2 for v in offdiag]
    return _sturm_count(diag, off2, x, _pivmin(off2))


def _pivmin(off2):
    return np.finfo(float).tiny * max(1.0, max(off2, default=1.0))


def _sturm_count(diag, off2, x, pivmin):
    d = diag[0] - x
    if -pivmin < d < pivmin:
        d = -pivmin
    count = 1 if d < 0.0 else 0
    for i in range(1, len(diag)):
        d = diag[i] - x - off2[i - 1] / d
        if -pivmin < d < pivmin:
            d = -pivmin
        if d < 0.0:
            count += 1
    return count


def gershgorin(diag, offdiag):
    diag = np.asarray(diag, dtype=float)
    off = np.abs(np.asarray(offdiag, dtype=float))
    radius = np.zeros_like(diag)
    radius[:-1] += off
    radius[1:] += off
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def _inverse_iteration(diag, offdiag, lam, iterations=3):
    n = len(diag)
    shift = lam + 1e-10 * max(1.0, abs(lam))
    a = np.asarray(diag, dtype=float) - shift
    b = np.asarray(offdiag, dtype=float)
    # LU of the shifted matrix (no pivoting; the shift keeps pivots away from zero)
    piv = np.empty(n)
    lower = np.empty(max(n - 1, 0))
    piv[0] = a[0]
    for i in range(1, n):
        p = piv[i - 1] if piv[i - 1] != 0.0 else EPS
        lower[i - 1] = b[i - 1] / p
        piv[i] = a[i] - lower[i - 1] * b[i - 1]
    piv[piv == 0.0] = EPS
    vec = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        y = vec.copy()
        for i in range(1, n):
            y[i] -= lower[i - 1] * y[i - 1]
        y[n - 1] /= piv[n - 1]
        for i in range(n - 2, -1, -1):
            y[i] = (y[i] - b[i] * y[i + 1]) / piv[i]
        vec = y / np.linalg.norm(y)
    if vec[np.argmax(np.abs(vec))] < 0.0:
        vec = -vec
    return vec


def tridiag_smallest_eigen(diag, offdiag, k, rtol=1e-12, vectors=False):
    """The ``k`` smallest eigenvalues of a symmetric tridiagonal matrix.

    Bisection on the Sturm count to an absolute tolerance of
    ``rtol * max(|lower|, |upper|)`` over the Gershgorin interval. With
    ``vectors=True`` the unit eigenvectors from inverse iteration are returned
    as columns of a second array.
    """
    n = len(diag)
    if len(offdiag) != n - 1:
        raise DimensionError(f"offdiag must have length {n - 1}, got {len(offdiag)}")
    if not 1 <= k <= n:
        raise DimensionError(f"k must be in [1, {n}], got {k}")
    d = [float(v) for v in diag]
    off2 = [float(v) ** 2 for v in offdiag]
    pivmin = _pivmin(off2)
    lo, hi = gershgorin(diag, offdiag)
    scale = max(abs(lo), abs(hi), np.finfo(float).tiny)
    tol = rtol * scale
    values = []
    lower_bound = lo
    for j in range(k):
        left, right = lower_bound, hi
        # narrow using the count: we want the smallest x with count(x) > j
        while right - left > tol:
            mid = 0.5 * (left + right)
            if mid <= left or mid >= right:
                break
            if _sturm_count(d, off2, mid, pivmin) > j:
                right = mid
            else:
                left = mid
        lam = 0.5 * (left + right)
        values.append(lam)
        lower_bound = left
    values = np.array(values)
    if not vectors:
        return values
    vecs = np.column_stack([_inverse_iteration(diag, offdiag, lam) for lam in values])
    return values, vecs
