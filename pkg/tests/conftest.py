import numpy as np
import pytest

from pgmbounds.ensemble import make_mixed_ensemble, make_pure_ensemble


def random_unit_vectors(rng, n, d):
    v = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_probs(rng, n):
    p = rng.random(n) + 0.05
    return p / p.sum()


def random_pure(rng, n, d, uniform=False):
    probs = None if uniform else random_probs(rng, n)
    return make_pure_ensemble(random_unit_vectors(rng, n, d), probs)


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    X = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_mixed(rng, n, d, uniform=False):
    mats = [random_density(rng, d, rank=int(rng.integers(1, d + 1))) for _ in range(n)]
    return make_mixed_ensemble(mats, None if uniform else random_probs(rng, n))


def random_unitary(rng, d):
    X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(X)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def counterexample():
    return make_mixed_ensemble([np.diag([0.5, 0.5, 0.0]), np.diag([0.5, 0.0, 0.5])])


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per criterion; the lines are repeated in the terminal summary."""

    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        print(line)
        request.config.stash[ACCEPTANCE_LINES].append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda t: t[0]):
            terminalreporter.write_line(line)
