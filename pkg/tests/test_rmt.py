import math

import numpy as np
import pytest
from scipy import integrate, special

from pgmbounds.rmt import (
    LEVY_C,
    TRACE_NORM_RATIO_SQ,
    RatioRegime,
    _hyp2f1_series,
    break_even_ratio,
    break_even_ratio_closed_form,
    cube_lipschitz,
    cube_lipschitz_worst_case,
    cube_statistic,
    cube_tail,
    elliptic_f,
    elliptic_f_lower,
    elliptic_f_quadrature,
    expected_pgm_bound,
    expected_trace_norm_exact,
    expected_trace_norm_lower,
    expected_trace_norm_series,
    g_concavity_check,
    hyp2f1,
    mp_edges,
    mp_eigen_cdf,
    mp_eigen_density,
    mp_singular_density,
    sphere_statistic,
    sphere_tail,
    sup_cdf_distance,
)
from pgmbounds.sampling import ginibre, seeded_rng

GRID11 = [i / 10 for i in range(11)]


def test_constants():
    assert TRACE_NORM_RATIO_SQ == pytest.approx(0.7205061947899575, abs=1e-15)
    assert LEVY_C == pytest.approx(1 / (18 * math.pi**3))


def test_ratio_regime():
    reg = RatioRegime(n=30, d=120)
    assert (reg.k, reg.m, reg.r) == (30, 120, 0.25)
    assert (reg.A, reg.B) == (0.5, 1.5)
    with pytest.raises(ValueError):
        RatioRegime(0, 4)


def test_mp_density_point_value():
    assert mp_edges(1.0) == (0.0, 2.0)
    assert mp_eigen_density(2.0, 1.0) == pytest.approx(1 / (2 * math.pi), abs=1e-15)
    assert mp_eigen_density(5.0, 1.0) == 0.0
    assert mp_eigen_density(0.1, 0.25) == 0.0


@pytest.mark.parametrize("r", [0.05, 0.25, 0.5, 0.8, 1.0])
def test_mp_densities_normalise(r):
    A, B = mp_edges(r)
    eig, _ = integrate.quad(lambda x: mp_eigen_density(x, r), A * A, B * B, limit=200)
    sing, _ = integrate.quad(lambda y: mp_singular_density(y, r), A, B, limit=200)
    assert abs(eig - 1) <= 1e-6
    assert abs(sing - 1) <= 1e-6


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_mp_cdf(r):
    A, B = mp_edges(r)
    assert mp_eigen_cdf(A * A, r) == 0.0
    assert mp_eigen_cdf(B * B, r) == 1.0
    xs = np.linspace(A * A, B * B, 21)
    F = mp_eigen_cdf(xs, r)
    assert np.all(np.diff(F) >= 0)
    mid = xs[10]
    direct, _ = integrate.quad(lambda x: mp_eigen_density(x, r), A * A, mid, limit=200)
    assert F[10] == pytest.approx(direct, abs=1e-8)


def test_sup_cdf_distance_of_quantiles_is_small():
    r = 0.5
    A, B = mp_edges(r)
    xs = np.linspace(A * A, B * B, 4001)
    F = mp_eigen_cdf(xs, r)
    targets = (np.arange(400) + 0.5) / 400
    quantiles = np.interp(targets, F, xs)
    assert sup_cdf_distance(quantiles, r) <= 2 / 400


@pytest.mark.parametrize("theta", np.linspace(0.01, math.pi - 0.01, 9))
@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_substitution_identity(theta, r):
    s = math.sqrt(r)
    A, B = 1 - s, 1 + s
    y = 1 + s * math.cos(theta)
    original = math.sqrt((y * y - A * A) * (B * B - y * y)) * s * math.sin(theta)
    substituted = r * math.sin(theta) ** 2 * math.sqrt((y + A) * (y + B))
    assert original == pytest.approx(substituted, abs=1e-12)


def test_hyp2f1_examples():
    assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(-math.log(0.5) / 0.5, abs=1e-14)
    assert hyp2f1(-0.5, 0.5, 2.0, 0.0) == 1.0
    assert hyp2f1(-0.5, 0.5, 2.0, 1.0) == pytest.approx(8 / (3 * math.pi), abs=1e-15)
    # a terminating series
    assert hyp2f1(-2.0, 1.0, 1.0, 0.5) == pytest.approx(0.25, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, 0.1, 0.5, 0.9, 0.99])
@pytest.mark.parametrize("abc", [(-0.5, 0.5, 2.0), (0.5, 0.5, 1.0), (1.5, -2.5, 3.0)])
def test_hyp2f1_against_scipy(x, abc):
    assert hyp2f1(*abc, x) == pytest.approx(special.hyp2f1(*abc, x), rel=1e-12)


def test_hyp2f1_series_at_one_converges_slowly_to_gauss_sum():
    assert abs(_hyp2f1_series(-0.5, 0.5, 2.0, 1.0) - 8 / (3 * math.pi)) <= 1e-10


def test_hyp2f1_domain_errors():
    with pytest.raises(ValueError):
        hyp2f1(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        hyp2f1(1.0, 1.0, -1.0, 0.5)
    with pytest.raises(ValueError):
        hyp2f1(1.0, 1.0, 2.0, 1.5)


def test_elliptic_f_endpoints():
    assert elliptic_f(0.0) == 0.0
    assert elliptic_f_quadrature(0.0) == 0.0
    assert elliptic_f(1.0) == pytest.approx(8 / 3, abs=1e-10)
    assert elliptic_f_quadrature(1.0) == pytest.approx(8 / 3, abs=1e-10)
    with pytest.raises(ValueError):
        elliptic_f(1.5)


@pytest.mark.parametrize("r", GRID11)
def test_elliptic_f_two_paths_agree(r):
    assert abs(elliptic_f_quadrature(r) - elliptic_f(r)) <= 1e-12


@pytest.mark.parametrize("r", GRID11)
def test_elliptic_f_lower_bound(r):
    assert elliptic_f(r) - elliptic_f_lower(r) >= -1e-12


def test_elliptic_f_lower_is_tight_at_ends():
    assert elliptic_f_lower(0.0) == 0.0
    assert elliptic_f_lower(1.0) == pytest.approx(8 / 3, abs=1e-14)


def test_expected_trace_norm_square():
    m = 100
    expected = 8 * m**1.5 / (3 * math.pi)
    assert expected_trace_norm_exact((m, m)) == pytest.approx(expected, rel=1e-12)
    assert expected_trace_norm_series((m, m)) == pytest.approx(expected, rel=1e-12)
    assert expected_trace_norm_lower((m, m)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n,d", [(10, 40), (40, 10), (3, 300), (64, 100)])
def test_expected_trace_norm_lower_bound_and_symmetry(n, d):
    assert expected_trace_norm_lower((n, d)) <= expected_trace_norm_exact((n, d)) + 1e-9
    assert expected_trace_norm_exact((n, d)) == pytest.approx(expected_trace_norm_exact((d, n)))


def test_expected_trace_norm_thin_limit():
    # r -> 0: every singular value concentrates at sqrt(m)
    n, d = 1, 10**6
    assert expected_trace_norm_exact((n, d)) == pytest.approx(math.sqrt(d), rel=1e-5)


def test_expected_trace_norm_matches_sampling():
    R = ginibre(200, 200, seeded_rng(3))
    tn = np.linalg.svd(R, compute_uv=False).sum()
    assert tn == pytest.approx(expected_trace_norm_exact((200, 200)), rel=0.01)


def test_expected_pgm_bound_values():
    c = 1 - TRACE_NORM_RATIO_SQ
    assert expected_pgm_bound(1.0) == pytest.approx(TRACE_NORM_RATIO_SQ, abs=1e-15)
    assert expected_pgm_bound(0.5) == pytest.approx(1 - 0.5 * c)
    assert expected_pgm_bound(2.0) == pytest.approx((1 - c / 2) / 2)
    with pytest.raises(ValueError):
        expected_pgm_bound(0.0)


def test_expected_pgm_bound_continuous_and_decreasing():
    assert expected_pgm_bound(1 - 1e-12) == pytest.approx(expected_pgm_bound(1 + 1e-12), abs=1e-10)
    rs = np.linspace(0.01, 10, 500)
    vals = np.array([expected_pgm_bound(r) for r in rs])
    assert np.all(np.diff(vals) < 0)


def test_break_even_ratio():
    closed = break_even_ratio_closed_form()
    assert closed == pytest.approx(1.6640876369726476, abs=1e-14)
    assert abs(break_even_ratio() - closed) <= 1e-10
    assert expected_pgm_bound(closed) == pytest.approx(0.5, abs=1e-14)


def test_tails():
    assert sphere_tail(50, 50, 0.1) == pytest.approx(1.9123721292807485, abs=1e-12)
    assert cube_tail(256, 256, 0.1) == pytest.approx(2 * math.exp(-81.92), rel=1e-12)
    assert cube_tail(256, 256, 0.1) <= 1e-35
    assert sphere_tail(10, 10, 0.0) == 2.0
    with pytest.raises(ValueError):
        cube_tail(4, 4, -0.1)


def test_g_is_concave():
    rep = g_concavity_check()
    assert rep.concave
    assert rep.max_second_difference < 0
    assert rep.min_chord_gap >= -1e-12
    assert rep.values[0] == 1.0
    assert rep.values[-1] == pytest.approx(TRACE_NORM_RATIO_SQ, abs=1e-15)


def random_unit_frobenius(rng, d, n):
    S = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
    return S / np.linalg.norm(S)


@pytest.mark.parametrize("seed", range(10))
def test_sphere_statistic_is_2_lipschitz(seed):
    rng = np.random.default_rng(seed)
    d, n = rng.integers(1, 33, size=2)
    S, T = random_unit_frobenius(rng, d, n), random_unit_frobenius(rng, d, n)
    gap = abs(sphere_statistic(S) - sphere_statistic(T))
    assert gap <= 2 * np.linalg.norm(S - T) + 1e-12
    # nearby points as well
    T = S + 1e-3 * random_unit_frobenius(rng, d, n)
    T /= np.linalg.norm(T)
    assert abs(sphere_statistic(S) - sphere_statistic(T)) <= 2 * np.linalg.norm(S - T) + 1e-12


def test_cube_statistic_extremes():
    assert cube_statistic(np.ones((4, 8))) == pytest.approx(1 / 4)
    H = np.array([[1, 1], [1, -1]], dtype=float)
    assert cube_statistic(H) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(10))
def test_cube_statistic_independent_pairs(seed):
    rng = np.random.default_rng(seed)
    n, d = (int(x) for x in rng.integers(2, 33, size=2))
    H = rng.choice([-1.0, 1.0], size=(n, d))
    K = rng.choice([-1.0, 1.0], size=(n, d))
    h = np.count_nonzero(H != K)
    assert abs(cube_statistic(H) - cube_statistic(K)) <= cube_lipschitz(n, d) * h + 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_cube_statistic_single_flips_obey_worst_case_constant(seed):
    rng = np.random.default_rng(seed)
    n, d = (int(x) for x in rng.integers(2, 33, size=2))
    H = rng.choice([-1.0, 1.0], size=(n, d))
    for _ in range(20):
        K = H.copy()
        i, j = rng.integers(n), rng.integers(d)
        K[i, j] *= -1
        gap = abs(cube_statistic(H) - cube_statistic(K))
        assert gap <= cube_lipschitz_worst_case(n, d) + 1e-12
