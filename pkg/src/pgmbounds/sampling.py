"""
Seeded random ensembles: Haar-random states, Ginibre matrices and the
states produced by querying random Boolean phase oracles.

Every trial draws from its own generator derived from ``(seed, stream)``,
so results do not depend on the order in which trials are executed.
"""
from dataclasses import dataclass

import numpy as np

from .ensemble import PureEnsemble, _frozen

__all__ = [
    "SeededRng",
    "BooleanFunction",
    "seeded_rng",
    "haar_state",
    "ginibre",
    "random_pure_ensemble",
    "random_boolean_function",
    "boolean_to_state",
    "hamming",
    "random_oracle_ensemble",
]


@dataclass(frozen=True)
class SeededRng:
    """Reproducible generator recipe; call :meth:`generator` for a fresh stream."""

    seed: int
    stream: int = 0

    def generator(self):
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def seeded_rng(seed, stream=0):
    """Generator for trial ``stream`` of an experiment seeded with ``seed``."""
    return SeededRng(int(seed), int(stream)).generator()


def _gen(rng):
    if isinstance(rng, SeededRng):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return seeded_rng(rng)


def _complex_normal(rng, size, variance):
    scale = np.sqrt(variance / 2.0)
    return scale * rng.standard_normal(size) + 1j * scale * rng.standard_normal(size)


def haar_state(d, rng):
    """Uniformly random unit vector in ``C^d``."""
    v = _complex_normal(_gen(rng), d, 1.0 / d)
    return v / np.linalg.norm(v)


def ginibre(d, n, rng):
    """``d x n`` matrix of i.i.d. standard complex Gaussians (``E|z|^2 = 1``)."""
    return _complex_normal(_gen(rng), (d, n), 1.0)


def random_pure_ensemble(n, d, rng):
    """``n`` equiprobable Haar-random states in ``d`` dimensions."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    g = _gen(rng)
    states = _complex_normal(g, (n, d), 1.0 / d)
    states /= np.linalg.norm(states, axis=1, keepdims=True)
    return PureEnsemble(_frozen(states), _frozen(np.full(n, 1.0 / n)))


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Truth table of ``f: {0,1}^n_bits -> {0,1}``, indexed by the input as an integer."""

    n_bits: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.uint8)
        if table.shape != (2**self.n_bits,):
            raise ValueError(f"truth table must have {2**self.n_bits} entries")
        if np.any(table > 1):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", _frozen(table))

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n_bits == other.n_bits and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n_bits, self.table.tobytes()))


def random_boolean_function(n_bits, rng):
    return BooleanFunction(n_bits, _gen(rng).integers(0, 2, size=2**n_bits, dtype=np.uint8))


def boolean_to_state(f):
    """Oracle state ``2^{-n/2} sum_x (-1)^{f(x)} |x>``."""
    D = f.table.size
    return (1.0 - 2.0 * f.table.astype(float)) / np.sqrt(D) + 0j


def hamming(f, g):
    return int(np.count_nonzero(f.table != g.table))


def random_oracle_ensemble(N, n_bits, rng):
    """
    ``N`` equiprobable oracle states of independently uniform Boolean
    functions (drawn with replacement).
    """
    if N < 1:
        raise ValueError("N must be positive")
    g = _gen(rng)
    tables = g.integers(0, 2, size=(N, 2**n_bits), dtype=np.uint8)
    states = (1.0 - 2.0 * tables.astype(float)) / np.sqrt(2**n_bits) + 0j
    return PureEnsemble(_frozen(states), _frozen(np.full(N, 1.0 / N)))
