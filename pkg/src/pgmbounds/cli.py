"""
Command-line entry point::

    pgmbounds fig1 --seed 7 --dim 50 --runs 10 --out fig1.csv
    pgmbounds analyze --in ensemble.json --format json

Exit status is 0 on success, 1 on a runtime or numerical failure and 2 when
the input (flags or ensemble file) is invalid.
"""
import argparse
import json
import math
import sys

from .ensemble import EnsembleError
from .experiments import COMMANDS, ConfigError, ExperimentConfig, run

__all__ = ["main", "build_parser", "format_table"]


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else str(v)
    return str(v)


def _json(v, indent=0):
    pad = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {_json(x, indent + 1)}' for k, x in v.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [f"{pad}  {_json(x, indent + 1)}" for x in v]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(str(v))


def format_table(table, fmt, command):
    """Render a :class:`~pgmbounds.experiments.Table` as CSV or JSON text."""
    if fmt == "json":
        doc = {
            "command": command,
            "columns": list(table.columns),
            "rows": [dict(zip(table.columns, row)) for row in table.rows],
            "summary": table.summary,
        }
        return _json(doc) + "\n"
    lines = [",".join(table.columns)]
    lines += [",".join(_fmt(v) for v in row) for row in table.rows]
    # summary values go after the table as comment lines
    lines += [f"# {k}={_fmt(v)}" for k, v in table.summary.items()]
    return "\n".join(lines) + "\n"


def _grid(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(
        prog="pgmbounds",
        description="Pretty good measurement bounds and random-ensemble experiments.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=None, help="d for fig1/mp-hist, D for oracle-id")
    p.add_argument("--grid", type=_grid, default=None, help="comma-separated ratios")
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--in", dest="input_path", default=None)
    p.add_argument("--out", dest="output_path", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for random trials")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = ExperimentConfig(
        command=args.command,
        seed=args.seed,
        d=args.dim,
        grid=args.grid,
        runs=args.runs,
        epsilon=args.eps,
        input_path=args.input_path,
        output_path=args.output_path,
        output_format=args.format,
        jobs=args.jobs,
    )
    try:
        table = run(config)
    except (ConfigError, EnsembleError) as exc:
        print(f"pgmbounds: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"pgmbounds: error: cannot read input: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"pgmbounds: numerical failure: {exc}", file=sys.stderr)
        return 1

    text = format_table(table, args.format, args.command)
    if args.output_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"pgmbounds: error: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
