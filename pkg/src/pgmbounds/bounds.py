"""
Analytic lower bounds on the PGM success probability.

* :func:`inner_product_bound` uses only pairwise overlaps of the states.
* :func:`eigenvalue_bound` uses only the spectrum of the Gram matrix.
* :func:`mixed_fidelity_bound` extends the first to mixed states via
  pairwise fidelities and purities.

Ensembles whose Gram matrix has constant diagonal ``1/n`` and constant
off-diagonal ``p/n`` are solved exactly by :func:`constant_overlap_exact`.
"""
import math
from dataclasses import dataclass

import numpy as np

from .ensemble import gram, make_pure_ensemble
from .pgm import pgm_success_mixed, pgm_success_pure
from .spectral import clamp_psd_spectrum, eig_hermitian, matrix_sqrt, purity

__all__ = [
    "BoundReport",
    "MixedBoundReport",
    "tangent_parabola",
    "inner_product_bound",
    "eigenvalue_bound",
    "mixed_fidelity_bound",
    "naive_mixed_bound",
    "fidelity_matrix",
    "constant_overlap_gram",
    "constant_overlap_exact",
    "realize_gram",
    "bound_report",
    "mixed_bound_report",
]

ORDER_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    pgm_exact: float
    inner_product_bound: float
    eigenvalue_bound: float
    guessing_baseline: float
    inner_product_ok: bool
    eigenvalue_ok: bool
    guessing_ok: bool

    @property
    def ordering_ok(self):
        return self.inner_product_ok and self.eigenvalue_ok and self.guessing_ok


@dataclass(frozen=True)
class MixedBoundReport:
    pgm_exact: float
    fidelity_bound: float
    naive_bound: float
    guessing_baseline: float
    fidelity_ok: bool
    guessing_ok: bool
    # the naive bound is not a theorem; True records a counterexample
    naive_exceeds_pgm: bool

    @property
    def ordering_ok(self):
        return self.fidelity_ok and self.guessing_ok


def tangent_parabola(r):
    """
    Coefficients ``(a, b)`` of the parabola ``a x + b x^2`` touching
    ``sqrt(x)`` at ``x = r``.  It lies below ``sqrt(x)`` for all ``x >= 0``.
    """
    if not r > 0:
        raise ValueError("tangency point must be positive")
    return 1.5 / math.sqrt(r), -0.5 / r**1.5


def _safe_ratio(num, den):
    out = np.zeros_like(num)
    nz = den > 0
    out[nz] = num[nz] / den[nz]
    return out


def inner_product_bound(e):
    """
    ``sum_i p_i^2 / sum_j p_j |<psi_i|psi_j>|^2``.

    Members with ``p_i = 0`` contribute nothing.
    """
    overlaps = np.abs(e.states.conj() @ e.states.T) ** 2
    den = overlaps @ e.probs
    return float(np.sum(_safe_ratio(e.probs**2, den)))


def eigenvalue_bound(G):
    """``(sum_i sqrt(lambda_i))^2 / n`` over the eigenvalues of the Gram matrix."""
    G = np.asarray(G, dtype=complex)
    w = clamp_psd_spectrum(eig_hermitian(G).eigenvalues)
    return float(np.sum(np.sqrt(w)) ** 2 / G.shape[0])


def fidelity_matrix(states):
    """Pairwise fidelities of a stack of density matrices."""
    roots = [matrix_sqrt(r) for r in states]
    n = len(roots)
    F = np.eye(n)
    for i in range(n):
        F[i, i] = np.trace(states[i]).real ** 2
        for j in range(i + 1, n):
            s = np.linalg.svd(roots[i] @ roots[j], compute_uv=False).sum()
            F[i, j] = F[j, i] = s * s
    return F


def mixed_fidelity_bound(e):
    """``sum_i p_i^2 tr(rho_i^2) / sum_j p_j F(rho_i, rho_j)``."""
    F = fidelity_matrix(e.states)
    pur = np.array([purity(r) for r in e.states])
    return float(np.sum(_safe_ratio(e.probs**2 * pur, F @ e.probs)))


def naive_mixed_bound(e):
    """
    ``sum_i p_i^2 / sum_j p_j F(rho_i, rho_j)``.

    This drops the purity factor of :func:`mixed_fidelity_bound` and is not
    a valid lower bound for mixed states; it is kept for comparison.
    """
    F = fidelity_matrix(e.states)
    return float(np.sum(_safe_ratio(e.probs**2, F @ e.probs)))


def _check_overlap(n, p):
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if not 0.0 <= p < 1.0:
        raise ValueError("overlap p must lie in [0, 1)")


def constant_overlap_gram(n, p):
    """Gram matrix with ``1/n`` on the diagonal and ``p/n`` elsewhere."""
    _check_overlap(n, p)
    G = np.full((n, n), p / n, dtype=complex)
    np.fill_diagonal(G, 1.0 / n)
    return G


def constant_overlap_exact(n, p):
    """
    Exact PGM success probability for the constant-overlap ensemble,
    ``(sqrt(p + (1-p)/n) + (n-1) sqrt((1-p)/n))^2 / n``.
    """
    _check_overlap(n, p)
    top = math.sqrt(p + (1.0 - p) / n)
    rest = (n - 1) * math.sqrt((1.0 - p) / n)
    return (top + rest) ** 2 / n


def realize_gram(G):
    """
    A pure ensemble in ``n`` dimensions whose Gram matrix is ``G``.

    The columns of ``sqrt(G)`` have Gram matrix ``G``; dividing column ``i``
    by ``sqrt(G_ii)`` gives unit states with probabilities ``G_ii``.
    """
    G = np.asarray(G, dtype=complex)
    R = matrix_sqrt(G)
    p = np.real(np.diag(G))
    cols = R / np.sqrt(p)[None, :]
    return make_pure_ensemble(cols.T, p / p.sum())


def bound_report(e):
    """All pure-state bounds next to the exact PGM value."""
    exact = pgm_success_pure(e)
    ip = inner_product_bound(e)
    ev = eigenvalue_bound(gram(e))
    guess = float(np.sum(e.probs**2))
    return BoundReport(
        pgm_exact=exact,
        inner_product_bound=ip,
        eigenvalue_bound=ev,
        guessing_baseline=guess,
        inner_product_ok=ip <= exact + ORDER_TOL,
        eigenvalue_ok=ev <= exact + ORDER_TOL,
        guessing_ok=guess <= exact + ORDER_TOL,
    )


def mixed_bound_report(e):
    exact = pgm_success_mixed(e)
    fb = mixed_fidelity_bound(e)
    naive = naive_mixed_bound(e)
    guess = float(np.sum(e.probs**2))
    return MixedBoundReport(
        pgm_exact=exact,
        fidelity_bound=fb,
        naive_bound=naive,
        guessing_baseline=guess,
        fidelity_ok=fb <= exact + ORDER_TOL,
        guessing_ok=guess <= exact + ORDER_TOL,
        naive_exceeds_pgm=naive > exact + ORDER_TOL,
    )
