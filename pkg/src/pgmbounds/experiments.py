"""
Batch experiments behind the command-line tool.

Each ``run_*`` function takes an :class:`ExperimentConfig` and returns a
:class:`Table`.  Random trials are independent tasks keyed by
``(grid index, trial index)``; each gets its own generator stream, and
results are reduced in key order, so serial and parallel runs agree bit for
bit.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field, fields

import numpy as np

from . import rmt
from .bounds import bound_report, constant_overlap_exact, mixed_bound_report
from .ensemble import MixedEnsemble, load, make_mixed_ensemble
from .pgm import pgm_success_pure
from .sampling import ginibre, random_oracle_ensemble, random_pure_ensemble, seeded_rng
from .spectral import eig_hermitian

__all__ = [
    "COMMANDS",
    "ConfigError",
    "ExperimentConfig",
    "Table",
    "Fig1Row",
    "Fig2Row",
    "HistRow",
    "OracleRow",
    "run_fig1",
    "run_fig2",
    "run_mp_hist",
    "run_analyze",
    "run_oracle_id",
    "run_report",
    "run",
]

COMMANDS = ("fig1", "fig2", "mp-hist", "analyze", "oracle-id", "report")

FIG1_GRID = tuple(round(0.1 * i, 10) for i in range(1, 21)) + tuple(2.0 + 0.5 * i for i in range(1, 17))
FIG2_GRID = tuple(round(0.01 * i, 10) for i in range(101))

_DEFAULTS = {
    "fig1": {"d": 50, "grid": FIG1_GRID, "runs": 10},
    "fig2": {"grid": FIG2_GRID},
    "mp-hist": {"d": 512, "grid": (1.0,)},
    "oracle-id": {"d": 256, "grid": (1.0,), "runs": 20},
}

HIST_BINS = 50
STREAM_STRIDE = 2**32
MAX_ORACLE_BITS = 12


class ConfigError(ValueError):
    """Invalid experiment parameters."""


@dataclass
class ExperimentConfig:
    command: str
    seed: int = 0
    d: int | None = None
    grid: tuple | None = None
    runs: int | None = None
    epsilon: float = 0.1
    input_path: str | None = None
    output_path: str | None = None
    output_format: str = "csv"
    jobs: int = 1

    def resolved(self):
        """Copy with per-command defaults filled in, validated."""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        defaults = _DEFAULTS.get(self.command, {})
        cfg = ExperimentConfig(**{f.name: getattr(self, f.name) for f in fields(self)})
        if cfg.d is None:
            cfg.d = defaults.get("d")
        if cfg.grid is None:
            cfg.grid = defaults.get("grid", ())
        if cfg.runs is None:
            cfg.runs = defaults.get("runs", 1)
        cfg.grid = tuple(float(r) for r in cfg.grid)
        if not 0 <= cfg.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if cfg.runs < 1:
            raise ConfigError("runs must be at least 1")
        if cfg.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if cfg.epsilon < 0 or not math.isfinite(cfg.epsilon):
            raise ConfigError("eps must be a non-negative number")
        if cfg.output_format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if cfg.output_path is not None and not cfg.output_path:
            raise ConfigError("output path must not be empty")
        if cfg.command in ("fig1", "mp-hist", "oracle-id"):
            if not cfg.grid:
                raise ConfigError("grid must not be empty")
            if any(not (r > 0 and math.isfinite(r)) for r in cfg.grid):
                raise ConfigError("grid values must be positive")
        if cfg.command == "fig1" and cfg.d < 2:
            raise ConfigError("fig1 needs d >= 2")
        if cfg.command == "fig2" and any(not 0.0 <= r <= 1.0 for r in cfg.grid):
            raise ConfigError("fig2 grid values must lie in [0, 1]")
        if cfg.command == "mp-hist":
            if cfg.d < 1:
                raise ConfigError("mp-hist needs d >= 1")
            if any(r > 1.0 for r in cfg.grid):
                raise ConfigError("mp-hist ratio d/n must lie in (0, 1]")
        if cfg.command == "oracle-id":
            bits = cfg.d.bit_length() - 1
            if cfg.d < 2 or 2**bits != cfg.d or bits > MAX_ORACLE_BITS:
                raise ConfigError(f"oracle-id needs D a power of two up to 2^{MAX_ORACLE_BITS}")
        if cfg.command == "analyze" and not cfg.input_path:
            raise ConfigError("analyze needs an input file")
        return cfg


@dataclass
class Table:
    columns: list
    rows: list
    summary: dict = field(default_factory=dict)


def _table(row_type, rows, summary=None):
    return Table([f.name for f in fields(row_type)], [astuple(r) for r in rows], summary or {})


def _map(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _stream(grid_index, trial):
    return grid_index * STREAM_STRIDE + trial


# -- fig1 -------------------------------------------------------------------

@dataclass
class Fig1Row:
    r: float
    n: int
    d: int
    bound: float
    empirical_mean: float
    empirical_std: float
    runs: int


def _haar_trial(task):
    seed, stream, n, d = task
    return pgm_success_pure(random_pure_ensemble(n, d, seeded_rng(seed, stream)))


def _mean_std(values):
    v = np.asarray(values)
    std = float(v.std(ddof=1)) if v.size > 1 else 0.0
    return float(v.mean()), std


def run_fig1(config):
    """PGM success of Haar ensembles with ``n = round(d r)`` against the asymptotic bound."""
    cfg = config.resolved()
    sizes = [max(1, round(cfg.d * r)) for r in cfg.grid]
    tasks = [
        (cfg.seed, _stream(gi, t), n, cfg.d)
        for gi, n in enumerate(sizes)
        for t in range(cfg.runs)
    ]
    results = _map(_haar_trial, tasks, cfg.jobs)
    rows = []
    for gi, (r, n) in enumerate(zip(cfg.grid, sizes)):
        mean, std = _mean_std(results[gi * cfg.runs:(gi + 1) * cfg.runs])
        rows.append(Fig1Row(r, n, cfg.d, rmt.expected_pgm_bound(r), mean, std, cfg.runs))
    return _table(Fig1Row, rows)


# -- fig2 -------------------------------------------------------------------

@dataclass
class Fig2Row:
    r: float
    quadrature_value: float
    series_value: float
    bound_value: float
    error: float


def run_fig2(config):
    """Gap between the trace-norm integral and its closed-form lower bound."""
    cfg = config.resolved()
    rows = []
    for r in cfg.grid:
        quad = rmt.elliptic_f_quadrature(r)
        lower = rmt.elliptic_f_lower(r)
        rows.append(Fig2Row(r, quad, rmt.elliptic_f(r), lower, quad - lower))
    errors = [row.error for row in rows]
    return _table(Fig2Row, rows, {"min_error": min(errors), "max_error": max(errors)})


# -- mp-hist ----------------------------------------------------------------

@dataclass
class HistRow:
    bin_center: float
    empirical_density: float
    mp_density: float


def wishart_spectrum(d, n, rng):
    """Eigenvalues of ``R R^dag / n`` for a ``d x n`` Ginibre matrix ``R``."""
    R = ginibre(d, n, rng)
    return np.array(eig_hermitian(R @ R.conj().T / n).eigenvalues)


def run_mp_hist(config):
    """Histogram of one Wishart spectrum next to the Marcenko-Pastur density."""
    cfg = config.resolved()
    r = cfg.grid[0]
    d = cfg.d
    n = max(d, round(d / r))
    ratio = d / n
    eigs = wishart_spectrum(d, n, seeded_rng(cfg.seed, 0))
    A, B = rmt.mp_edges(ratio)
    width = B * B - A * A
    lo, hi = max(0.0, A * A - 0.1 * width), B * B + 0.1 * width
    counts, edges = np.histogram(eigs, bins=HIST_BINS, range=(lo, hi))
    density = counts / (eigs.size * np.diff(edges))
    centers = (edges[:-1] + edges[1:]) / 2
    analytic = rmt.mp_eigen_density(centers, ratio)
    rows = [HistRow(float(c), float(e), float(a)) for c, e, a in zip(centers, density, analytic)]
    summary = {
        "n": n,
        "d": d,
        "ratio": ratio,
        "sup_cdf_distance": rmt.sup_cdf_distance(eigs, ratio),
    }
    return _table(HistRow, rows, summary)


# -- analyze ----------------------------------------------------------------

@dataclass
class QuantityRow:
    quantity: str
    value: float
    status: str


def _status(ok):
    return "ok" if ok else "exceeds P^pgm"


def run_analyze(config):
    """Exact PGM value and every applicable bound for an ensemble file."""
    cfg = config.resolved()
    e = load(cfg.input_path)
    if isinstance(e, MixedEnsemble):
        rep = mixed_bound_report(e)
        rows = [
            QuantityRow("pgm_exact", rep.pgm_exact, "exact"),
            QuantityRow("fidelity_bound", rep.fidelity_bound, _status(rep.fidelity_ok)),
            QuantityRow("naive_bound", rep.naive_bound, _status(not rep.naive_exceeds_pgm)),
            QuantityRow("guessing_baseline", rep.guessing_baseline, _status(rep.guessing_ok)),
        ]
        summary = {"kind": "mixed", "n": e.n, "dim": e.dim, "ordering_ok": rep.ordering_ok}
    else:
        rep = bound_report(e)
        rows = [
            QuantityRow("pgm_exact", rep.pgm_exact, "exact"),
            QuantityRow("inner_product_bound", rep.inner_product_bound, _status(rep.inner_product_ok)),
            QuantityRow("eigenvalue_bound", rep.eigenvalue_bound, _status(rep.eigenvalue_ok)),
            QuantityRow("guessing_baseline", rep.guessing_baseline, _status(rep.guessing_ok)),
        ]
        summary = {"kind": "pure", "n": e.n, "dim": e.dim, "ordering_ok": rep.ordering_ok}
    return _table(QuantityRow, rows, summary)


# -- oracle-id --------------------------------------------------------------

@dataclass
class OracleRow:
    N: int
    D: int
    r: float
    bound: float
    empirical_mean: float
    empirical_min: float
    tail_at_eps: float
    tail_at_eps_clipped: float


def _oracle_trial(task):
    seed, stream, N, bits = task
    return pgm_success_pure(random_oracle_ensemble(N, bits, seeded_rng(seed, stream)))


def run_oracle_id(config):
    """PGM success for sets of ``N = round(r D)`` random phase oracles on ``log2 D`` bits."""
    cfg = config.resolved()
    D = cfg.d
    bits = D.bit_length() - 1
    sizes = [max(1, round(r * D)) for r in cfg.grid]
    tasks = [(cfg.seed, _stream(gi, t), N, bits) for gi, N in enumerate(sizes) for t in range(cfg.runs)]
    results = _map(_oracle_trial, tasks, cfg.jobs)
    rows = []
    for gi, N in enumerate(sizes):
        vals = results[gi * cfg.runs:(gi + 1) * cfg.runs]
        tail = rmt.cube_tail(N, D, cfg.epsilon)
        rows.append(
            OracleRow(
                N, D, N / D, rmt.expected_pgm_bound(N / D),
                float(np.mean(vals)), float(np.min(vals)), tail, min(tail, 1.0),
            )
        )
    return _table(OracleRow, rows, {"epsilon": cfg.epsilon})


# -- report -----------------------------------------------------------------

@dataclass
class ReportRow:
    quantity: str
    value: float


def run_report(config):
    """Headline constants, each recomputed from the library."""
    config.resolved()
    counter = make_mixed_ensemble([np.diag([0.5, 0.5, 0.0]), np.diag([0.5, 0.0, 0.5])])
    rep = mixed_bound_report(counter)
    rows = [
        ReportRow("expected_pgm_bound_r1", rmt.expected_pgm_bound(1.0)),
        ReportRow("break_even_ratio", rmt.break_even_ratio()),
        ReportRow("elliptic_f_at_1", rmt.elliptic_f(1.0)),
        ReportRow("hyp2f1_at_1", rmt.hyp2f1(-0.5, 0.5, 2.0, 1.0)),
        ReportRow("counterexample_pgm", rep.pgm_exact),
        ReportRow("counterexample_fidelity_bound", rep.fidelity_bound),
        ReportRow("counterexample_naive_bound", rep.naive_bound),
        ReportRow("constant_overlap_n4_p0.5", constant_overlap_exact(4, 0.5)),
        ReportRow("sphere_tail_n50_d50_eps0.1", rmt.sphere_tail(50, 50, 0.1)),
        ReportRow("cube_tail_N256_D256_eps0.1", rmt.cube_tail(256, 256, 0.1)),
    ]
    return _table(ReportRow, rows)


_RUNNERS = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "mp-hist": run_mp_hist,
    "analyze": run_analyze,
    "oracle-id": run_oracle_id,
    "report": run_report,
}


def run(config):
    return _RUNNERS[config.command](config)

