import numpy as np
import pytest

from conftest import random_mixed, random_pure
from pgmbounds.bounds import (
    bound_report,
    constant_overlap_exact,
    constant_overlap_gram,
    eigenvalue_bound,
    inner_product_bound,
    mixed_bound_report,
    mixed_fidelity_bound,
    naive_mixed_bound,
    realize_gram,
    tangent_parabola,
)
from pgmbounds.ensemble import gram, make_mixed_ensemble, make_pure_ensemble, to_mixed
from pgmbounds.pgm import pgm_success, pgm_success_from_gram


def test_tangent_parabola_examples():
    assert tangent_parabola(1.0) == (1.5, -0.5)
    assert tangent_parabola(4.0) == (0.75, -0.0625)
    with pytest.raises(ValueError):
        tangent_parabola(0.0)


@pytest.mark.parametrize("r", [0.01, 0.5, 1.0, 3.0, 10.0])
def test_tangent_parabola_lies_below_sqrt(r):
    a, b = tangent_parabola(r)
    x = np.linspace(0, 4 * r, 1001)
    assert np.all(a * x + b * x**2 <= np.sqrt(x) + 1e-12)
    assert a * r + b * r * r == pytest.approx(np.sqrt(r), abs=1e-12)


def test_inner_product_bound_examples():
    assert inner_product_bound(make_pure_ensemble(np.eye(3))) == pytest.approx(1.0)
    e = make_pure_ensemble([[1, 0]] * 4)
    assert inner_product_bound(e) == pytest.approx(0.25)


@pytest.mark.parametrize("n,p", [(2, 0.3), (4, 0.5), (10, 0.9)])
def test_inner_product_bound_constant_overlap(n, p):
    e = realize_gram(constant_overlap_gram(n, p))
    assert inner_product_bound(e) == pytest.approx(1 / (1 + p * p * (n - 1)), abs=1e-10)


def test_eigenvalue_bound_examples():
    assert eigenvalue_bound(np.eye(3) / 3) == pytest.approx(1.0)
    assert eigenvalue_bound(np.full((3, 3), 1 / 3)) == pytest.approx(1 / 3)
    # frozen from the constant-overlap formula at n=4, p=0.5
    assert eigenvalue_bound(constant_overlap_gram(4, 0.5)) == pytest.approx(0.8567627457812108, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 20])
@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.99])
def test_constant_overlap_spectrum_and_exact_value(n, p):
    G = constant_overlap_gram(n, p)
    w = np.sort(np.linalg.eigvalsh(G))
    np.testing.assert_allclose(w[-1], p + (1 - p) / n, atol=1e-12)
    np.testing.assert_allclose(w[:-1], (1 - p) / n, atol=1e-12)
    exact = constant_overlap_exact(n, p)
    assert pgm_success_from_gram(G) == pytest.approx(exact, abs=1e-10)
    assert eigenvalue_bound(G) == pytest.approx(exact, abs=1e-10)


@pytest.mark.parametrize("n", [1, 2, 5, 50, 500])
@pytest.mark.parametrize("p", [0.0, 0.01, 0.3, 0.9])
def test_constant_overlap_asymptotic_lower_bound(n, p):
    assert constant_overlap_exact(n, p) >= (1 - p) - 2 * (1 - p) / n - 1e-9


def test_constant_overlap_range_checks():
    with pytest.raises(ValueError):
        constant_overlap_exact(3, 1.0)
    with pytest.raises(ValueError):
        constant_overlap_gram(0, 0.5)


def test_constant_overlap_limits():
    assert constant_overlap_exact(7, 0.0) == pytest.approx(1.0)
    assert constant_overlap_exact(1, 0.4) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(5))
def test_realize_gram_round_trip(seed):
    rng = np.random.default_rng(seed)
    e = random_pure(rng, 4, 6)
    f = realize_gram(gram(e))
    np.testing.assert_allclose(gram(f), gram(e), atol=1e-10)
    assert pgm_success(f) == pytest.approx(pgm_success(e), abs=1e-10)


@pytest.mark.parametrize("seed", range(20))
def test_bound_report_ordering(seed):
    rng = np.random.default_rng(seed)
    e = random_pure(rng, int(rng.integers(1, 10)), int(rng.integers(1, 10)))
    rep = bound_report(e)
    assert rep.ordering_ok
    assert rep.guessing_baseline <= rep.inner_product_bound + 1e-12


def test_bound_report_orthonormal():
    rep = bound_report(make_pure_ensemble(np.eye(4)))
    assert rep.pgm_exact == pytest.approx(1.0)
    assert rep.inner_product_bound == pytest.approx(1.0)
    assert rep.eigenvalue_bound == pytest.approx(1.0)
    assert rep.guessing_baseline == pytest.approx(0.25)


def test_mixed_bounds_on_counterexample(counterexample):
    assert mixed_fidelity_bound(counterexample) == pytest.approx(0.4, abs=1e-12)
    assert naive_mixed_bound(counterexample) == pytest.approx(0.8, abs=1e-12)
    rep = mixed_bound_report(counterexample)
    assert rep.pgm_exact == pytest.approx(0.75, abs=1e-12)
    assert rep.ordering_ok
    assert rep.naive_exceeds_pgm


def test_mixed_bounds_reduce_to_pure(rng):
    e = random_pure(rng, 4, 3)
    m = to_mixed(e)
    assert mixed_fidelity_bound(m) == pytest.approx(inner_product_bound(e), abs=1e-10)
    assert naive_mixed_bound(m) == pytest.approx(inner_product_bound(e), abs=1e-10)


@pytest.mark.parametrize("seed", range(20))
def test_mixed_bound_report_ordering(seed):
    rng = np.random.default_rng(seed)
    rep = mixed_bound_report(random_mixed(rng, int(rng.integers(2, 6)), int(rng.integers(2, 6))))
    assert rep.ordering_ok


def test_maximally_mixed_states():
    e = make_mixed_ensemble([np.eye(2) / 2] * 2)
    assert mixed_fidelity_bound(e) == pytest.approx(0.25)
    assert pgm_success(e) == pytest.approx(0.5)
