"""
Hermitian eigendecomposition and the matrix functions built on it.

Everything here works on dense complex ``numpy`` arrays.  Two eigensolvers
are available: LAPACK (``numpy.linalg.eigh``, the default) and a cyclic
Jacobi solver kept as an independent reference implementation.
"""
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralDecomposition",
    "NotHermitianError",
    "NotPSDError",
    "ConvergenceError",
    "eig_hermitian",
    "jacobi_eigh",
    "clamp_psd_spectrum",
    "matrix_sqrt",
    "inv_sqrt_on_support",
    "trace_norm",
    "frobenius_norm",
    "entrywise_norm1",
    "fidelity",
    "purity",
]

HERMITIAN_TOL = 1e-10
NOT_PSD_TOL = 1e-6
SUPPORT_REL_TOL = 1e-12

_EPS = np.finfo(float).eps


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order and matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def _as_square(H):
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ValueError("matrix has non-finite entries")
    return H


def _check_hermitian(H, tol=HERMITIAN_TOL):
    dev = np.max(np.abs(H - H.conj().T)) if H.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return (H + H.conj().T) / 2


def jacobi_eigh(H, tol=1e-14, max_sweeps=100):
    """
    Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each off-diagonal pair is first made real by a diagonal phase and then
    annihilated with an ordinary real plane rotation.  Sweeps continue until
    the off-diagonal Frobenius norm drops below ``tol * ||H||_F``.

    Returns ``(w, V)`` with ascending eigenvalues, like ``numpy.linalg.eigh``.
    """
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if n < 2 or scale == 0.0:
        w = np.real(np.diag(A)).copy()
        order = np.argsort(w)
        return w[order], V[:, order]

    threshold = tol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= _EPS * 1e-3 * scale:
                    continue
                phase = apq / mag
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # block of D @ J with D = diag(1, conj(phase)) on (p, q)
                W = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ W
                A[idx, :] = W.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ W
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(A)).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def eig_hermitian(H, method="lapack"):
    """
    Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    H : array_like
        Square complex matrix, Hermitian to within 1e-10 entrywise.
    method : {"lapack", "jacobi"}
        Backend.  Both return the same decomposition up to eigenvector phases.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues sorted in descending order.
    """
    H = _check_hermitian(_as_square(H))
    if method == "lapack":
        w, V = np.linalg.eigh(H)
    elif method == "jacobi":
        w, V = jacobi_eigh(H)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    w.flags.writeable = False
    V.flags.writeable = False
    return SpectralDecomposition(w, V)


def clamp_psd_spectrum(w):
    """
    Clamp a descending spectrum of a PSD matrix: small negatives and
    values at rounding level relative to the top eigenvalue become 0.
    """
    if w.size and w[-1] < -NOT_PSD_TOL:
        raise NotPSDError(f"matrix is not positive semidefinite (eigenvalue {w[-1]:.3e})")
    w = np.where(w < 0.0, 0.0, w)
    top = w[0] if w.size else 0.0
    # eigh noise on zero eigenvalues is ~n*eps*top; its square root would not be small
    return np.where(w <= w.size * _EPS * top, 0.0, w)


def _spectral_function(U, values):
    return (U * values) @ U.conj().T


def matrix_sqrt(H, method="lapack"):
    """Positive semidefinite square root of a PSD Hermitian matrix."""
    w, U = eig_hermitian(H, method)
    w = clamp_psd_spectrum(w)
    R = _spectral_function(U, np.sqrt(w))
    return (R + R.conj().T) / 2


def inv_sqrt_on_support(H, rel_tol=SUPPORT_REL_TOL, method="lapack"):
    """
    ``H^{-1/2}`` restricted to the support of ``H``.

    Eigenvalues at or below ``rel_tol * lambda_max`` are treated as zero and
    mapped to zero; the rest are mapped to ``lambda^{-1/2}``.
    """
    w, U = eig_hermitian(H, method)
    w = clamp_psd_spectrum(w)
    if w.size == 0 or w[0] <= 0.0:
        raise ValueError("zero operator has no support")
    keep = w > rel_tol * w[0]
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / np.sqrt(w[keep])
    R = _spectral_function(U, inv)
    return (R + R.conj().T) / 2


def trace_norm(M):
    """Sum of singular values."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(M, compute_uv=False)))


def frobenius_norm(M):
    return float(np.linalg.norm(np.asarray(M)))


def entrywise_norm1(M):
    """Entrywise 1-norm ``sum_ij |M_ij|`` (not the induced operator norm)."""
    return float(np.sum(np.abs(np.asarray(M))))


def fidelity(rho, sigma):
    """
    Fidelity ``(tr sqrt(rho^1/2 sigma rho^1/2))^2``.

    Evaluated as the squared trace norm of ``sqrt(rho) sqrt(sigma)``, which
    has the same singular values as the inner square root but avoids taking
    square roots of rounding noise.
    """
    rho = _as_square(rho)
    sigma = _as_square(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    return trace_norm(matrix_sqrt(rho) @ matrix_sqrt(sigma)) ** 2


def purity(rho):
    """``tr(rho^2)`` for Hermitian ``rho``."""
    rho = _check_hermitian(_as_square(rho))
    return float(np.vdot(rho, rho).real)
