"""Command-line interface.

Subcommands: gamma, classify, solve, surface, field, verify.  Exit codes:
0 success, 1 usage or configuration error, 2 parameters outside the
admissible family, 3 numerical failure.  Tables are emitted as CSV (comma
separated, header row, LF endings) or JSON (one object with
``schema_version``, ``config`` and ``records``); floats print in their
shortest round-trip form.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import re
import sys
from typing import Sequence

import numpy as np

from . import fields
from .config import DEFAULT, RunConfig, load_config
from .errors import ConfigError, DomainError, Error, NumericalError
from .params import Params, Stratum, c3_bar, classify, gamma_star, in_family, on_boundary
from .solver import chebyshev_nodes, gamma_minus, gamma_plus, solve_ivp
from .verify import run_suite

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse uses exit code 2 for usage errors; the contract wants 1
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # treat "-4:0:3" style range values as values, not option names
        self._negative_number_matcher = re.compile(r"^-[\d.]")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _sanitize(obj):
    """Make a value JSON-encodable; non-finite floats become strings."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    return str(obj)


def _emit(records: list[dict], columns: Sequence[str], cfg: RunConfig) -> None:
    if cfg.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config": _sanitize(dataclasses.asdict(cfg)),
            "records": [_sanitize(r) for r in records],
        }
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        lines = [",".join(columns)]
        for r in records:
            lines.append(",".join(_fmt(r[col]) for col in columns))
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_axis(spec: str, name: str) -> list[float]:
    """Either a single float or a start:stop:count range."""
    if ":" not in spec:
        try:
            return [float(spec)]
        except ValueError as e:
            raise ConfigError(f"cannot parse {name}: {spec!r}") from e
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} range must be start:stop:count, got {spec!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError as e:
        raise ConfigError(f"cannot parse {name} range {spec!r}") from e
    if n < 1:
        raise ConfigError(f"{name} range count must be >= 1, got {n}")
    if n == 1:
        return [a]
    return [a + i * (b - a) / (n - 1) for i in range(n)]


# ---------------------------------------------------------------------------
# subcommands

def _gamma_record(c: Params, cfg: RunConfig) -> dict:
    cb = c3_bar(c.c1, c.c2)
    rec = {"c1": c.c1, "c2": c.c2, "c3": c.c3, "c3_bar": cb,
           "gamma_plus": None, "gamma_minus": None, "on_boundary": None}
    if in_family(c, cfg):
        rec["gamma_plus"] = gamma_plus(c, cfg)
        rec["gamma_minus"] = gamma_minus(c, cfg)
        rec["on_boundary"] = on_boundary(c, cfg)
    return rec


_GAMMA_COLS = ("c1", "c2", "c3", "c3_bar", "gamma_plus", "gamma_minus", "on_boundary")


def cmd_gamma(args, cfg: RunConfig) -> int:
    c = Params(args.c1, args.c2, args.c3)
    rec = _gamma_record(c, cfg)
    _emit([rec], _GAMMA_COLS, cfg)
    if rec["gamma_plus"] is None:
        print(f"nsaxi gamma: c3={c.c3!r} is below the admissibility boundary "
              f"{rec['c3_bar']!r}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_classify(args, cfg: RunConfig) -> int:
    c = Params(args.c1, args.c2, args.c3)
    index = classify(c, args.gamma, cfg)
    rec = {"c1": c.c1, "c2": c.c2, "c3": c.c3, "gamma": args.gamma,
           "stratum": index.stratum.value, "c3_bar": c3_bar(c.c1, c.c2)}
    _emit([rec], ("c1", "c2", "c3", "gamma", "stratum", "c3_bar"), cfg)
    return EXIT_DOMAIN if index.stratum is Stratum.OUTSIDE else EXIT_OK


_SOLVE_COLS = ("x", "U", "dU", "u_r", "u_theta", "p")


def cmd_solve(args, cfg: RunConfig) -> int:
    c = Params(args.c1, args.c2, args.c3)
    curve = solve_ivp(c, args.gamma, cfg)
    records = []
    for x in chebyshev_nodes(args.grid):
        sample = fields.reconstruct(curve, 1.0, float(x))
        records.append({"x": float(x), "U": curve.eval(float(x)),
                        "dU": curve.deriv(float(x), 1), "u_r": sample.u_r,
                        "u_theta": sample.u_theta, "p": sample.p})
    _emit(records, _SOLVE_COLS, cfg)
    return EXIT_OK


_SURFACE_COLS = ("c1", "c2", "c3", "c3_bar", "gamma_plus", "gamma_minus")


def cmd_surface(args, cfg: RunConfig) -> int:
    axes = (_parse_axis(args.c1, "--c1"), _parse_axis(args.c2, "--c2"),
            _parse_axis(args.c3, "--c3"))
    points = [(a, b, d) for a in axes[0] for b in axes[1] for d in axes[2]]

    failures = []

    def one(point):
        a, b, d = point
        try:
            c = Params(a, b, d)
        except DomainError:
            return {"c1": a, "c2": b, "c3": d, "c3_bar": None,
                    "gamma_plus": None, "gamma_minus": None}
        try:
            rec = _gamma_record(c, cfg)
            return {k: rec[k] for k in _SURFACE_COLS}
        except NumericalError as e:
            failures.append((point, e))
            return {"c1": a, "c2": b, "c3": d, "c3_bar": c3_bar(c.c1, c.c2),
                    "gamma_plus": None, "gamma_minus": None}

    if cfg.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=cfg.jobs) as ex:
            records = list(ex.map(one, points))
    else:
        records = [one(p) for p in points]

    if failures and cfg.strict:
        point, err = failures[0]
        print(f"nsaxi surface: solver failure at {point}: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit(records, _SURFACE_COLS, cfg)
    return EXIT_OK


_FIELD_COLS = ("r", "x", "u_r", "u_theta", "u_phi", "p")


def cmd_field(args, cfg: RunConfig) -> int:
    if args.lam is not None:
        if not abs(args.lam) > 1.0:
            raise DomainError(f"--lambda must satisfy |lambda| > 1, got {args.lam!r}")
        c = Params(0.0, 0.0, 0.0)
        gamma = 2.0 / args.lam
    else:
        if args.gamma is None:
            raise ConfigError("field requires either --lambda or --gamma")
        c = Params(args.c1, args.c2, args.c3)
        gamma = args.gamma
    curve = solve_ivp(c, gamma, cfg)
    r_values = _parse_axis(args.range, "--range")
    for r in r_values:
        if not r > 0:
            raise ConfigError(f"radii must be positive, got {r!r}")
    samples, failures = fields.sample_grid(curve, r_values, chebyshev_nodes(args.grid))
    if failures and cfg.strict:
        r, x, reason = failures[0]
        print(f"nsaxi field: {reason}", file=sys.stderr)
        return EXIT_NUMERICAL
    records = [{"r": s.r, "x": s.x, "u_r": s.u_r, "u_theta": s.u_theta,
                "u_phi": s.u_phi, "p": s.p} for s in samples]
    _emit(records, _FIELD_COLS, cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    results = run_suite(cfg, name_filter=cfg.suite, jobs=cfg.jobs)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": _sanitize(dataclasses.asdict(cfg)),
        "records": [_sanitize(dataclasses.asdict(r)) for r in results],
        "all_passed": all(r.passed for r in results),
    }
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{status} {r.name} measured={_fmt(r.measured)} bound={_fmt(r.bound)}",
              file=sys.stderr)
    return EXIT_OK if payload["all_passed"] else EXIT_USAGE


# ---------------------------------------------------------------------------
# argument wiring

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", default=None, help="path to a key = value config file")
    sub.add_argument("--format", choices=("csv", "json"), default=None)
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--jobs", type=int, default=None)
    sub.add_argument("--strict", action="store_true", default=None)


def _add_params(sub: argparse.ArgumentParser, ranged: bool = False) -> None:
    if ranged:
        sub.add_argument("--c1", required=True, help="value or start:stop:count")
        sub.add_argument("--c2", required=True, help="value or start:stop:count")
        sub.add_argument("--c3", required=True, help="value or start:stop:count")
    else:
        sub.add_argument("--c1", type=float, required=True)
        sub.add_argument("--c2", type=float, required=True)
        sub.add_argument("--c3", type=float, required=True)


def build_parser() -> _Parser:
    parser = _Parser(prog="nsaxi", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("gamma", help="extremal midpoint values and boundary data")
    _add_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_gamma)

    p = subs.add_parser("classify", help="stratum of a (c, gamma) index")
    _add_params(p)
    p.add_argument("--gamma", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("solve", help="solution table for one (c, gamma)")
    _add_params(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--grid", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("surface", help="sweep of the extremal band over a c grid")
    _add_params(p, ranged=True)
    _add_common(p)
    p.set_defaults(func=cmd_surface)

    p = subs.add_parser("field", help="velocity and pressure samples")
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", type=float, default=0.0)
    p.add_argument("--c3", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="classical profile parameter, |lambda| > 1 (zero forcing)")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--range", default="1:1:1", help="radius values start:stop:count")
    _add_common(p)
    p.set_defaults(func=cmd_field)

    p = subs.add_parser("verify", help="run the numerical property suite")
    p.add_argument("--suite", default=None, help="substring filter on check names")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def _config_from_args(args) -> RunConfig:
    overrides = {}
    for key in ("format", "out", "jobs", "strict", "suite"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    if getattr(args, "grid", None) is not None:
        overrides["grid_n"] = args.grid
    return load_config(args.config, overrides=overrides)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        if getattr(args, "grid", None) is None and hasattr(args, "grid"):
            args.grid = cfg.grid_n
        return args.func(args, cfg)
    except SystemExit as e:
        return int(e.code or 0)
    except ConfigError as e:
        print(f"nsaxi: config error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"nsaxi: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as e:
        print(f"nsaxi: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except Error as e:
        print(f"nsaxi: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
