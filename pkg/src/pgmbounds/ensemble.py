"""
Ensembles of quantum states and the matrices derived from them.

A pure ensemble holds ``n`` unit vectors in ``C^d`` together with their a
priori probabilities.  The state matrix has the probability-weighted states
``sqrt(p_i)|psi_i>`` as columns; its Gram matrix ``G = S^dag S`` and the
ensemble density matrix ``rho = S S^dag`` share their non-zero spectrum.
"""
import json
from dataclasses import dataclass

import numpy as np

from .spectral import HERMITIAN_TOL, eig_hermitian

__all__ = [
    "EnsembleError",
    "EnsembleFormatError",
    "PureEnsemble",
    "MixedEnsemble",
    "make_pure_ensemble",
    "make_mixed_ensemble",
    "state_matrix",
    "gram",
    "density",
    "to_mixed",
    "spectral_refinement",
    "serialize",
    "deserialize",
    "save",
    "load",
]

NORM_TOL = 1e-9
PROB_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-10

MAX_DIM = 4096


class EnsembleError(ValueError):
    """An ensemble violates one of its invariants."""


class EnsembleFormatError(EnsembleError):
    """An ensemble document is malformed."""


def _frozen(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PureEnsemble:
    """
    ``states`` has shape ``(n, d)``: row ``i`` is the unit vector ``|psi_i>``.
    """

    states: np.ndarray
    probs: np.ndarray

    @property
    def dim(self):
        return self.states.shape[1]

    @property
    def n(self):
        return self.states.shape[0]

    kind = "pure"

    def __eq__(self, other):
        if not isinstance(other, PureEnsemble):
            return NotImplemented
        return np.array_equal(self.states, other.states) and np.array_equal(self.probs, other.probs)

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class MixedEnsemble:
    """``states`` has shape ``(n, d, d)``: one density matrix per member."""

    states: np.ndarray
    probs: np.ndarray

    @property
    def dim(self):
        return self.states.shape[1]

    @property
    def n(self):
        return self.states.shape[0]

    kind = "mixed"

    def __eq__(self, other):
        if not isinstance(other, MixedEnsemble):
            return NotImplemented
        return np.array_equal(self.states, other.states) and np.array_equal(self.probs, other.probs)

    def __len__(self):
        return self.n


def _validate_probs(probs, n):
    if probs is None:
        return np.full(n, 1.0 / n)
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (n,):
        raise EnsembleError(f"expected {n} probabilities, got shape {probs.shape}")
    if not np.all(np.isfinite(probs)):
        raise EnsembleError("probabilities must be finite")
    if np.any(probs < 0):
        raise EnsembleError("negative probability")
    total = probs.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise EnsembleError(f"probabilities sum to {total!r}, not 1")
    # deviations at the level of summation rounding are left alone so that
    # serialised ensembles reload bit-identically
    if abs(total - 1.0) > 4 * n * np.finfo(float).eps:
        probs = probs / total
    return probs


def make_pure_ensemble(vectors, probs=None):
    """
    Build a validated :class:`PureEnsemble`.

    Parameters
    ----------
    vectors : sequence of array_like
        ``n`` complex vectors of a common length ``d``.
    probs : sequence of float, optional
        A priori probabilities; uniform when omitted.  A sum within 1e-9 of
        one is renormalised, anything further away is rejected.
    """
    try:
        rows = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    except (TypeError, ValueError) as exc:
        raise EnsembleError(f"states must be complex vectors: {exc}") from None
    if not rows:
        raise EnsembleError("an ensemble needs at least one state")
    d = rows[0].size
    if d < 1 or any(r.size != d for r in rows):
        raise EnsembleError("dimension mismatch between states")
    if d > MAX_DIM:
        raise EnsembleError(f"dimension {d} exceeds {MAX_DIM}")
    states = np.stack(rows)
    if not np.all(np.isfinite(states)):
        raise EnsembleError("state amplitudes must be finite")
    norms = np.linalg.norm(states, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOL)
    if bad.size:
        raise EnsembleError(f"non-unit state at index {bad[0]} (norm {norms[bad[0]]!r})")
    probs = _validate_probs(probs, len(rows))
    return PureEnsemble(_frozen(states), _frozen(probs))


def make_mixed_ensemble(matrices, probs=None):
    """Build a validated :class:`MixedEnsemble` from density matrices."""
    try:
        mats = [np.asarray(m, dtype=complex) for m in matrices]
    except (TypeError, ValueError) as exc:
        raise EnsembleError(f"states must be complex matrices: {exc}") from None
    if not mats:
        raise EnsembleError("an ensemble needs at least one state")
    d = mats[0].shape[0] if mats[0].ndim == 2 else 0
    if d < 1 or any(m.shape != (d, d) for m in mats):
        raise EnsembleError("density matrices must all be square with a common dimension")
    if d > MAX_DIM:
        raise EnsembleError(f"dimension {d} exceeds {MAX_DIM}")
    states = np.stack(mats)
    if not np.all(np.isfinite(states)):
        raise EnsembleError("density matrix entries must be finite")
    for i, m in enumerate(states):
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise EnsembleError(f"state {i} is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise EnsembleError(f"state {i} has trace {tr!r}, not 1")
        lowest = eig_hermitian(m).eigenvalues[-1]
        if lowest < -PSD_TOL:
            raise EnsembleError(f"state {i} is not positive semidefinite (eigenvalue {lowest:.3e})")
    probs = _validate_probs(probs, len(mats))
    return MixedEnsemble(_frozen(states), _frozen(probs))


def state_matrix(e):
    """The ``d x n`` matrix with columns ``sqrt(p_i) |psi_i>``."""
    return (e.states * np.sqrt(e.probs)[:, None]).T


def gram(e):
    """Gram matrix ``S^dag S`` of the probability-weighted states, Hermitised."""
    S = state_matrix(e)
    G = S.conj().T @ S
    return (G + G.conj().T) / 2


def density(e):
    """Ensemble density matrix ``sum_i p_i rho_i``."""
    if isinstance(e, MixedEnsemble):
        rho = np.einsum("i,ijk->jk", e.probs, e.states)
    else:
        S = state_matrix(e)
        rho = S @ S.conj().T
    return (rho + rho.conj().T) / 2


def to_mixed(e):
    """View a pure ensemble as an ensemble of rank-one density matrices."""
    if isinstance(e, MixedEnsemble):
        return e
    proj = np.einsum("ij,ik->ijk", e.states, e.states.conj())
    return MixedEnsemble(_frozen(proj), e.probs)


def spectral_refinement(e):
    """
    Pure ensemble of the eigenvectors of every member of a mixed ensemble.

    Member ``i`` with spectral decomposition ``sum_k lambda_ik |v_ik><v_ik|``
    contributes the ``d`` states ``|v_ik>`` with probabilities
    ``p_i * lambda_ik``.  Clamped negative eigenvalues become weight 0.
    """
    vecs, weights = [], []
    for p, rho in zip(e.probs, e.states):
        w, U = eig_hermitian(rho)
        w = np.clip(w, 0.0, None)
        vecs.append(U.T)
        weights.append(p * w)
    weights = np.concatenate(weights)
    states = np.concatenate(vecs)
    return PureEnsemble(_frozen(states), _frozen(weights / weights.sum()))


# -- serialisation ----------------------------------------------------------

def _num(x):
    return format(float(x), ".17g")


def _pair(z):
    return f"[{_num(z.real)}, {_num(z.imag)}]"


def serialize(e):
    """
    Encode an ensemble as a JSON document.

    Complex amplitudes are ``[re, im]`` pairs; mixed states are row-major
    lists of rows.  Floats are written with 17 significant digits so that
    :func:`deserialize` restores them exactly.
    """
    probs = ", ".join(_num(p) for p in e.probs)
    if isinstance(e, MixedEnsemble):
        states = ",\n    ".join(
            "[" + ", ".join("[" + ", ".join(_pair(z) for z in row) + "]" for row in m) + "]"
            for m in e.states
        )
    else:
        states = ",\n    ".join("[" + ", ".join(_pair(z) for z in v) + "]" for v in e.states)
    return (
        "{\n"
        f'  "dim": {e.dim},\n'
        f'  "kind": "{e.kind}",\n'
        f'  "probs": [{probs}],\n'
        f'  "states": [\n    {states}\n  ]\n'
        "}\n"
    )


def _complex_array(obj, shape, what):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise EnsembleFormatError(f"{what}: entries must be [re, im] number pairs") from None
    if arr.shape != shape + (2,):
        raise EnsembleFormatError(f"{what}: expected shape {shape} of [re, im] pairs, got {arr.shape[:-1]}")
    return arr[..., 0] + 1j * arr[..., 1]


def deserialize(text):
    """Parse a document produced by :func:`serialize` (or written by hand)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnsembleFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise EnsembleFormatError("top level must be an object")
    for key in ("dim", "kind", "probs", "states"):
        if key not in doc:
            raise EnsembleFormatError(f'missing field "{key}"')
    dim, kind = doc["dim"], doc["kind"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise EnsembleFormatError('"dim" must be a positive integer')
    if kind not in ("pure", "mixed"):
        raise EnsembleFormatError('"kind" must be "pure" or "mixed"')
    states, probs = doc["states"], doc["probs"]
    if not isinstance(states, list) or not isinstance(probs, list):
        raise EnsembleFormatError('"states" and "probs" must be arrays')
    if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in probs):
        raise EnsembleFormatError('"probs" must contain numbers')
    shape = (len(states), dim) if kind == "pure" else (len(states), dim, dim)
    arr = _complex_array(states, shape, '"states"')
    if kind == "pure":
        return make_pure_ensemble(list(arr), probs)
    return make_mixed_ensemble(list(arr), probs)


def save(e, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(e))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())
