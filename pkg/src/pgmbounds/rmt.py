"""
Random-matrix estimates for ensembles of random states.

Covers the Marcenko-Pastur eigenvalue and singular-value densities, the
expected trace norm of a Ginibre matrix (as an integral and as a Gauss
hypergeometric series), the resulting lower bound on the expected PGM
success probability, and the concentration tail bounds on the sphere and
on the hypercube.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .spectral import trace_norm

__all__ = [
    "RatioRegime",
    "ConcavityReport",
    "LEVY_C",
    "TRACE_NORM_RATIO_SQ",
    "mp_edges",
    "mp_eigen_density",
    "mp_singular_density",
    "mp_eigen_cdf",
    "sup_cdf_distance",
    "hyp2f1",
    "elliptic_f",
    "elliptic_f_quadrature",
    "elliptic_f_lower",
    "expected_trace_norm_exact",
    "expected_trace_norm_series",
    "expected_trace_norm_lower",
    "expected_pgm_bound",
    "break_even_ratio",
    "break_even_ratio_closed_form",
    "sphere_tail",
    "cube_tail",
    "g_function",
    "g_concavity_check",
    "sphere_statistic",
    "cube_statistic",
    "SPHERE_LIPSCHITZ",
    "cube_lipschitz",
    "cube_lipschitz_worst_case",
]

# (E||R||_tr / k sqrt(m))^2 for square Ginibre matrices, 64 / (9 pi^2)
TRACE_NORM_RATIO_SQ = 64.0 / (9.0 * math.pi**2)
# constant in Levy's lemma
LEVY_C = 1.0 / (18.0 * math.pi**3)

SPHERE_LIPSCHITZ = 2.0

HYP_REL_TOL = 1e-16
HYP_MAX_TERMS = 100_000


@dataclass(frozen=True)
class RatioRegime:
    """Shape of a ``d x n`` random matrix, summarised by ``r = k / m``."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")

    @property
    def k(self):
        return min(self.n, self.d)

    @property
    def m(self):
        return max(self.n, self.d)

    @property
    def r(self):
        return self.k / self.m

    @property
    def A(self):
        return 1.0 - math.sqrt(self.r)

    @property
    def B(self):
        return 1.0 + math.sqrt(self.r)


def _check_ratio(r, allow_zero=False):
    lo_ok = r >= 0 if allow_zero else r > 0
    if not (lo_ok and r <= 1):
        raise ValueError(f"ratio r={r!r} outside {'[0, 1]' if allow_zero else '(0, 1]'}")


def mp_edges(r):
    """Support ``(A, B)`` of the singular-value law; eigenvalues live on ``[A^2, B^2]``."""
    s = math.sqrt(r)
    return 1.0 - s, 1.0 + s


def mp_eigen_density(x, r):
    """
    Marcenko-Pastur density ``sqrt((x - A^2)(B^2 - x)) / (2 pi r x)``.

    Limit law of the eigenvalues of ``R R^dag / n`` for a ``d x n`` Ginibre
    matrix with ``d / n -> r``.
    """
    _check_ratio(r)
    A, B = mp_edges(r)
    x = np.asarray(x, dtype=float)
    inside = (x > A * A) & (x < B * B)
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = np.sqrt((xi - A * A) * (B * B - xi)) / (2 * math.pi * r * xi)
    return out if out.ndim else float(out)


def mp_singular_density(y, r):
    """Density ``sqrt((y^2 - A^2)(B^2 - y^2)) / (pi r y)`` of the singular values of ``R / sqrt(m)``."""
    _check_ratio(r)
    A, B = mp_edges(r)
    y = np.asarray(y, dtype=float)
    inside = (y > A) & (y < B)
    out = np.zeros_like(y)
    yi = y[inside]
    out[inside] = np.sqrt((yi * yi - A * A) * (B * B - yi * yi)) / (math.pi * r * yi)
    return out if out.ndim else float(out)


def _mp_cdf_scalar(x, r):
    A, B = mp_edges(r)
    lo, hi = A * A, B * B
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    W = hi - lo
    # x = lo + W sin^2(phi) removes both square-root edges
    def integrand(phi):
        s, c = math.sin(phi), math.cos(phi)
        return W * W * s * s * c * c / (math.pi * r * (lo + W * s * s))

    upper = math.asin(math.sqrt((x - lo) / W))
    val, _ = integrate.quad(integrand, 0.0, upper, epsabs=1e-13, epsrel=1e-12, limit=200)
    return min(max(val, 0.0), 1.0)


def mp_eigen_cdf(x, r):
    """Cumulative distribution of :func:`mp_eigen_density`."""
    _check_ratio(r)
    x = np.asarray(x, dtype=float)
    out = np.array([_mp_cdf_scalar(float(v), r) for v in x.ravel()]).reshape(x.shape)
    return out if out.ndim else float(out)


def sup_cdf_distance(eigenvalues, r):
    """Kolmogorov distance between an empirical spectrum and the limit law."""
    x = np.sort(np.asarray(eigenvalues, dtype=float))
    N = x.size
    F = mp_eigen_cdf(x, r)
    upper = np.arange(1, N + 1) / N
    lower = np.arange(0, N) / N
    return float(max(np.max(np.abs(upper - F)), np.max(np.abs(F - lower))))


def hyp2f1(a, b, c, x):
    """
    Gauss hypergeometric function by its power series, for ``0 <= x <= 1``.

    Summation stops once a term falls below ``1e-16`` of the partial sum or
    after 100000 terms.  At ``x = 1`` the series converges only when
    ``c - a - b > 0``, in which case Gauss's summation theorem is used.
    """
    if c <= 0 and float(c).is_integer():
        raise ValueError("c must not be a non-positive integer")
    if not 0.0 <= x <= 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if x == 1.0:
        if c - a - b <= 0:
            raise ValueError("series diverges at x = 1 unless c - a - b > 0")
        g = math.gamma
        return g(c) * g(c - a - b) / (g(c - a) * g(c - b))
    return _hyp2f1_series(a, b, c, x)


def _hyp2f1_series(a, b, c, x):
    term = 1.0
    total = 1.0
    for k in range(HYP_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0.0 or abs(term) < HYP_REL_TOL * abs(total):
            break
    return total


def elliptic_f(r):
    """
    ``f(r) = int_A^B sqrt((y^2 - A^2)(B^2 - y^2)) dy`` evaluated as
    ``pi r 2F1(-1/2, 1/2; 2; r)``.
    """
    _check_ratio(r, allow_zero=True)
    return math.pi * r * hyp2f1(-0.5, 0.5, 2.0, r)


def elliptic_f_quadrature(r):
    """
    The same integral by direct quadrature.

    With ``y = 1 + sqrt(r) cos(theta)`` the integrand becomes the smooth
    periodic function ``r sin^2(theta) sqrt((y + A)(y + B))`` on ``[0, pi]``.
    """
    _check_ratio(r, allow_zero=True)
    if r == 0.0:
        return 0.0
    s = math.sqrt(r)
    A, B = 1.0 - s, 1.0 + s

    def integrand(theta):
        y = 1.0 + s * math.cos(theta)
        return math.sin(theta) ** 2 * math.sqrt((y + A) * (y + B))

    val, err = integrate.quad(integrand, 0.0, math.pi, epsabs=1e-14, epsrel=1e-13, limit=200)
    if err > 1e-10:
        raise ArithmeticError(f"quadrature did not converge (error estimate {err:.2e})")
    return r * val


def elliptic_f_lower(r):
    """Lower bound ``r pi sqrt(1 - r (1 - 64 / 9 pi^2))``, tight at r = 0 and r = 1."""
    _check_ratio(r, allow_zero=True)
    return r * math.pi * math.sqrt(1.0 - r * (1.0 - TRACE_NORM_RATIO_SQ))


def _regime(regime):
    if isinstance(regime, RatioRegime):
        return regime
    n, d = regime
    return RatioRegime(n, d)


def expected_trace_norm_exact(regime):
    """Limiting ``E ||R||_tr = m^{3/2} f(r) / pi`` for a ``d x n`` Ginibre matrix (quadrature)."""
    reg = _regime(regime)
    return reg.m**1.5 * elliptic_f_quadrature(reg.r) / math.pi


def expected_trace_norm_series(regime):
    """:func:`expected_trace_norm_exact` through the hypergeometric series instead."""
    reg = _regime(regime)
    return reg.m**1.5 * elliptic_f(reg.r) / math.pi


def expected_trace_norm_lower(regime):
    """``k sqrt(m) sqrt(1 - r (1 - 64 / 9 pi^2))``."""
    reg = _regime(regime)
    return reg.k * math.sqrt(reg.m) * math.sqrt(1.0 - reg.r * (1.0 - TRACE_NORM_RATIO_SQ))


def expected_pgm_bound(r):
    """
    Asymptotic lower bound on the expected PGM success probability for
    ``n`` random states in ``d`` dimensions, ``r = n / d``.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    c = 1.0 - TRACE_NORM_RATIO_SQ
    if r >= 1.0:
        return (1.0 - c / r) / r
    return 1.0 - r * c


def break_even_ratio(xtol=1e-12):
    """Largest ``r = n / d`` at which :func:`expected_pgm_bound` is still 1/2 (bisection)."""
    return optimize.bisect(lambda r: expected_pgm_bound(r) - 0.5, 1.0, 2.0, xtol=xtol, maxiter=200)


def break_even_ratio_closed_form():
    """Root ``1 + sqrt(1 - 2 (1 - 64 / 9 pi^2))`` of ``r^2 - 2r + 2c = 0``."""
    return 1.0 + math.sqrt(1.0 - 2.0 * (1.0 - TRACE_NORM_RATIO_SQ))


def sphere_tail(n, d, eps):
    """
    ``2 exp(-C (2nd + 1) eps^2 / 2)`` with ``C = 1 / (18 pi^3)``: bound on the
    probability that a Haar ensemble falls ``eps`` below the expected bound.
    Returned unclipped.
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return 2.0 * math.exp(-LEVY_C * (2 * n * d + 1) * eps * eps / 2.0)


def cube_tail(N, D, eps):
    """``2 exp(-N D eps^2 / 8)`` for random oracle ensembles.  Returned unclipped."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return 2.0 * math.exp(-2.0 * N * D * eps * eps / 16.0)


def g_function(r):
    """``2F1(-1/2, 1/2; 2; r)^2``."""
    return hyp2f1(-0.5, 0.5, 2.0, r) ** 2


@dataclass(frozen=True)
class ConcavityReport:
    grid: np.ndarray
    values: np.ndarray
    second_differences: np.ndarray
    max_second_difference: float
    min_chord_gap: float
    concave: bool


def g_concavity_check(grid_size=101, tol=1e-8):
    """
    Numerical concavity witness for :func:`g_function` on ``[0, 1]``.

    Reports the largest second central difference (must be ``<= tol``) and
    the smallest gap between ``g`` and its chord ``1 - r (1 - 64/9pi^2)``.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    grid = np.linspace(0.0, 1.0, grid_size)
    vals = np.array([g_function(float(r)) for r in grid])
    second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    chord = 1.0 - grid * (1.0 - TRACE_NORM_RATIO_SQ)
    max_second = float(second.max())
    return ConcavityReport(
        grid=grid,
        values=vals,
        second_differences=second,
        max_second_difference=max_second,
        min_chord_gap=float(np.min(vals - chord)),
        concave=max_second <= tol,
    )


def sphere_statistic(S):
    """``||S||_tr^2 / n`` for a ``d x n`` state matrix."""
    S = np.asarray(S)
    return trace_norm(S) ** 2 / S.shape[1]


def cube_statistic(H):
    """``||H||_tr^2 / (n^2 d)`` for an ``n x d`` sign matrix."""
    H = np.asarray(H)
    n, d = H.shape
    return trace_norm(H) ** 2 / (n * n * d)


def cube_lipschitz(n, d):
    """Hamming-metric Lipschitz constant ``4 / (n d)`` used for the cube tail."""
    return 4.0 / (n * d)


def cube_lipschitz_worst_case(n, d):
    """
    Constant ``4 k / (n sqrt(n d))`` that follows from
    ``||X||_tr <= sqrt(k) ||X||_F`` applied to unnormalised sign matrices.

    Unlike :func:`cube_lipschitz` it also holds for pairs at Hamming
    distance one.
    """
    k = min(n, d)
    return 4.0 * k / (n * math.sqrt(n * d))
