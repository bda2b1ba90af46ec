"""
The pretty good measurement (PGM) and its success probability.

For a pure ensemble the PGM success probability is ``sum_i (sqrt G)_ii^2``.
The same number can be obtained from the ``d x d`` density matrix as
``sum_i <psi'_i| rho^{-1/2} |psi'_i>^2``; whichever matrix is smaller is
diagonalised.  For mixed ensembles the measurement operators are
``rho^{-1/2} p_i rho_i rho^{-1/2}``.
"""
from dataclasses import dataclass

import numpy as np

from .ensemble import MixedEnsemble, density, gram, state_matrix
from .spectral import eig_hermitian, inv_sqrt_on_support, matrix_sqrt, trace_norm

__all__ = [
    "Povm",
    "PovmReport",
    "pgm_success_pure",
    "pgm_success_from_gram",
    "pgm_success_mixed",
    "pgm_success",
    "pgm_measurement",
    "povm_success",
    "helstrom_two_state",
    "helstrom",
    "validate_povm",
]

POVM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Povm:
    """Measurement operators stacked in an array of shape ``(n, d, d)``."""

    elements: np.ndarray

    def __len__(self):
        return self.elements.shape[0]

    def __iter__(self):
        return iter(self.elements)

    @property
    def dim(self):
        return self.elements.shape[1]


@dataclass(frozen=True)
class PovmReport:
    max_psd_violation: float
    max_completeness_deviation: float
    passed: bool


def pgm_success_from_gram(G):
    """``sum_i (sqrt G)_ii^2`` for a Gram matrix ``G``."""
    R = matrix_sqrt(G)
    return float(np.sum(np.real(np.diag(R)) ** 2))


def _pgm_via_density(e):
    S = state_matrix(e)
    rho_inv_sqrt = inv_sqrt_on_support(density(e))
    diag = np.real(np.einsum("ji,jk,ki->i", S.conj(), rho_inv_sqrt, S))
    return float(np.sum(diag**2))


def pgm_success_pure(e):
    """
    Exact success probability of the PGM on a pure ensemble.

    Examples
    --------
    >>> from pgmbounds.ensemble import make_pure_ensemble
    >>> e = make_pure_ensemble([[1, 0], [0.6, 0.8]])
    >>> round(pgm_success_pure(e), 12)
    0.9
    """
    if e.n < e.dim:
        return pgm_success_from_gram(gram(e))
    return _pgm_via_density(e)


def pgm_success_mixed(e):
    """``sum_i tr(rho^{-1/2} rho'_i rho^{-1/2} rho'_i)`` with ``rho'_i = p_i rho_i``."""
    weighted = e.states * e.probs[:, None, None]
    X = inv_sqrt_on_support(density(e))
    total = 0.0
    for r in weighted:
        T = X @ r
        # tr(T T) for T = X r; both factors Hermitian so this is real up to rounding
        total += np.real(np.vdot(T.conj().T, T))
    return float(total)


def pgm_success(e):
    if isinstance(e, MixedEnsemble):
        return pgm_success_mixed(e)
    return pgm_success_pure(e)


def pgm_measurement(e):
    """
    PGM operators for a pure or mixed ensemble.

    They sum to the projector onto the support of the ensemble density
    matrix; members with zero probability get the zero operator.
    """
    X = inv_sqrt_on_support(density(e))
    if isinstance(e, MixedEnsemble):
        elems = np.stack([X @ (p * r) @ X for p, r in zip(e.probs, e.states)])
    else:
        nu = X @ state_matrix(e)
        elems = np.einsum("ji,ki->ijk", nu, nu.conj())
    elems = (elems + np.conj(np.swapaxes(elems, 1, 2))) / 2
    elems.flags.writeable = False
    return Povm(elems)


def povm_success(e, m):
    """Average success probability ``sum_i p_i tr(M_i rho_i)``."""
    elements = m.elements if isinstance(m, Povm) else np.asarray(m, dtype=complex)
    if elements.shape[0] != e.n:
        raise ValueError(f"POVM has {elements.shape[0]} elements for {e.n} states")
    if elements.shape[1:] != (e.dim, e.dim):
        raise ValueError(f"POVM elements have shape {elements.shape[1:]}, ensemble dimension is {e.dim}")
    if isinstance(e, MixedEnsemble):
        vals = np.einsum("ijk,ikj->i", elements, e.states).real
    else:
        vals = np.einsum("ij,ijk,ik->i", e.states.conj(), elements, e.states).real
    return float(np.dot(e.probs, vals))


def _as_density(x):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        return np.outer(x, x.conj())
    return x


def helstrom_two_state(rho1, p1, rho2, p2):
    """
    Optimal success probability for telling two states apart,
    ``(1 + ||p1 rho1 - p2 rho2||_tr) / 2``.

    ``rho1`` and ``rho2`` may be density matrices or state vectors.
    """
    if abs(p1 + p2 - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p1 + p2!r}, not 1")
    rho1, rho2 = _as_density(rho1), _as_density(rho2)
    if rho1.shape != rho2.shape:
        raise ValueError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    return 0.5 * (1.0 + trace_norm(p1 * rho1 - p2 * rho2))


def helstrom(e):
    """:func:`helstrom_two_state` for a two-member ensemble."""
    if e.n != 2:
        raise ValueError("the Helstrom value is only available for two states")
    s0, s1 = e.states
    return helstrom_two_state(s0, e.probs[0], s1, e.probs[1])


def validate_povm(m, d, support=None):
    """
    Check positivity and completeness of a set of measurement operators.

    Completeness is measured against the identity, or against ``support``
    (a projector) when the operators only resolve a subspace, as the PGM
    of a rank-deficient ensemble does.
    """
    elements = m.elements if isinstance(m, Povm) else np.asarray(m, dtype=complex)
    if elements.ndim != 3 or elements.shape[1:] != (d, d):
        raise ValueError(f"expected operators of shape ({d}, {d})")
    psd_violation = 0.0
    for M in elements:
        herm_dev = np.max(np.abs(M - M.conj().T))
        lowest = eig_hermitian((M + M.conj().T) / 2).eigenvalues[-1]
        psd_violation = max(psd_violation, herm_dev, -lowest)
    target = np.eye(d) if support is None else np.asarray(support, dtype=complex)
    completeness = float(np.max(np.abs(elements.sum(axis=0) - target)))
    return PovmReport(float(psd_violation), completeness, psd_violation <= POVM_TOL and completeness <= POVM_TOL)
