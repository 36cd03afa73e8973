"""Command-line front end.

Every subcommand writes its artifacts (CSV tables and one JSON summary) into
the output directory and exits with status 0 only when all checks of the
invoked suite pass.  Otherwise the exit status is 1 and ``failures.json``
lists the failed checks; usage and parameter errors exit with status 2.

Settings come from ``--config`` (a JSON object whose keys match the long
flag names, plus an optional ``tolerances`` mapping) and are overridden by
flags given on the command line.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import TricomiError
from .params import make_params
from .quadrature import QuadratureSpec
from .transform import apply_K, solve_cauchy
from .verify import suites
from .verify.fd import grid_csv
from .wave import ode_oracle_separable, separable_solution

COMMANDS = ("solve", "kernel-check", "idcheck", "k0k1", "compare-fd", "appendix", "domains")

# preset name -> (wavenumber, forcing amplitude, initial amplitude)
PRESETS = {
    "separable-k1": (1.0, 1.0, 0.0),
    "separable-k2": (2.0, 1.0, 0.0),
    "zero": (1.0, 0.0, 0.0),
    "cauchy-cos": (1.0, 0.0, 1.0),
}

DEFAULT_GRIDS = {"solve": (16, 8), "compare-fd": (512, 2048)}
FAILURES_FILE = "failures.json"
MAX_LISTED = 10


def _parse_grid(value) -> tuple[int, int]:
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("grid must be given as nx,nt")
    try:
        nx, nt = (int(v) for v in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {value!r}") from exc
    if nx < 1 or nt < 1:
        raise argparse.ArgumentTypeError("grid counts must be positive")
    return nx, nt


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tricomi", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        # defaults are None so that only explicitly given flags override the config file
        sp.add_argument("--ell", type=float, default=None)
        sp.add_argument("--preset", default=None, choices=sorted(PRESETS))
        sp.add_argument("--config", default=None, help="JSON file with settings")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument("--nodes", type=int, default=None, help="quadrature nodes per dimension")
        sp.add_argument("--tol", type=float, default=None, help="primary check tolerance")
        sp.add_argument("--grid", type=_parse_grid, default=None, help="nx,nt")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--t", type=float, default=None, help="final time (solve)")
        sp.add_argument("--x0", type=float, default=None, help="domain apex half-width")
        sp.add_argument("--samples", type=int, default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ValueError("config file must hold a JSON object")
    for key in ("ell", "preset", "out", "nodes", "tol", "grid", "seed", "t", "x0", "samples"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    if "ell" not in cfg:
        raise ValueError("--ell is required (flag or config)")
    cfg["command"] = args.command
    cfg.setdefault("seed", 0)
    cfg.setdefault("preset", "separable-k1")
    cfg.setdefault("t", 1.0)
    cfg.setdefault("x0", 0.5)
    cfg.setdefault("tolerances", {})
    if "grid" in cfg:
        cfg["grid"] = list(_parse_grid(cfg["grid"]))
    elif args.command in DEFAULT_GRIDS:
        cfg["grid"] = list(DEFAULT_GRIDS[args.command])
    if cfg["preset"] not in PRESETS:
        raise ValueError(f"unknown preset {cfg['preset']!r}")
    if "out" not in cfg:
        cfg["out"] = os.environ.get("TRICOMI_OUT_DIR", "tricomi_out")
    return cfg


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_, int, np.integer)):
        return str(int(v))
    if v is None:
        return "nan"
    return f"{float(v):.17g}"


def write_table(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_cell(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _quadrature(cfg: dict, jacobi: bool = False) -> QuadratureSpec | None:
    if cfg.get("nodes") is None:
        return None
    return QuadratureSpec(scheme="gauss_jacobi" if jacobi else "adaptive", nodes=int(cfg["nodes"]))


def run_solve(p, cfg: dict) -> tuple[dict, dict]:
    """Transform solution of a separable preset on an output grid, compared
    with the ODE oracle ``u = cos(k x) U(t)``."""
    k, forcing, initial = PRESETS[cfg["preset"]]
    tol = suites.merged_tolerances(cfg["tolerances"])["transform_vs_ode"]
    tol = cfg.get("tol", tol)
    t_final = float(cfg["t"])
    if t_final <= 0.0:
        raise ValueError("--t must be positive")
    nx, nt = cfg["grid"]
    xs = -np.pi + 2.0 * np.pi * np.arange(nx) / nx
    ts = np.linspace(0.0, t_final, nt + 1)
    u = np.zeros((nx, nt + 1))
    if initial != 0.0:
        w = separable_solution(k).scaled(initial)
        w1 = separable_solution(k, lambda b: 0.0 * np.asarray(b))
        q = _quadrature(cfg, jacobi=True)
        for n, tn in enumerate(ts):
            u[:, n] = solve_cauchy(w, w1, p, xs, tn, q)
    elif forcing != 0.0:
        w = separable_solution(k).scaled(forcing)
        q = _quadrature(cfg)
        for n, tn in enumerate(ts):
            u[:, n] = apply_K(w, p, xs, tn, q).value
    oracle = ode_oracle_separable(p, k, lambda t: forcing, t_final, tol=1e-12, u0=initial)
    ref = np.cos(k * xs)[:, None] * oracle(ts)[None, :]
    diff = float(np.max(np.abs(u - ref)))
    at_zero = [[tn, float(u[nx // 2, n]), float(oracle(tn))] for n, tn in enumerate(ts)]
    checks = [suites.make_check("max |u - cos(kx) U(t)| over the output grid", diff, tol)]
    report = suites.make_report(checks, ell=p.ell, preset=cfg["preset"], k=k, t=t_final,
                            ode_comparison={"max_abs_difference": diff, "tolerance": tol,
                                            "x": float(xs[nx // 2]), "samples": at_zero})
    files = {"solution.csv": grid_csv(xs, ts, u, "u")}
    return report, files


def run_suite(p, cfg: dict) -> dict:
    cmd = cfg["command"]
    tols = cfg["tolerances"]
    tol = cfg.get("tol")
    seed = int(cfg["seed"])
    if cmd == "kernel-check":
        return suites.kernel_check(p, tol=tol, tolerances=tols)
    if cmd == "idcheck":
        return suites.identity_check(p, seed=seed, samples=int(cfg.get("samples", 200)),
                                     tol=tol, tolerances=tols)
    if cmd == "k0k1":
        return suites.k0k1_check(p, seed=seed, points=int(cfg.get("samples", 20)), tol=tol,
                                 q=_quadrature(cfg, jacobi=True), tolerances=tols)
    if cmd == "compare-fd":
        nx, nt = cfg["grid"]
        return suites.compare_fd(p, nx, nt, tol=tol, q=_quadrature(cfg), tolerances=tols)
    if cmd == "appendix":
        return suites.appendix_check(p, seed=seed, tol=tol, tolerances=tols)
    if cmd == "domains":
        return suites.domains_check(p, x0=float(cfg["x0"]), samples=int(cfg.get("samples", 200)),
                                    tol=tol, tolerances=tols)
    raise ValueError(f"unknown command {cmd!r}")


def run(cfg: dict) -> int:
    """Execute one configured command; returns the exit status."""
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    stem = cfg["command"].replace("-", "_")
    failures_path = out / FAILURES_FILE
    files: dict[str, str] = {}
    try:
        p = make_params(float(cfg["ell"]))
        if cfg["command"] == "solve":
            report, files = run_solve(p, cfg)
        else:
            report = run_suite(p, cfg)
    except (TricomiError, ValueError) as exc:
        report = {"passed": False, "failures": [f"{type(exc).__name__}: {exc}"], "checks": [],
                  "error": True}
    tables = report.pop("tables", {})
    for name, (header, rows) in tables.items():
        write_table(out / f"{stem}_{name}.csv", header, rows)
    for name, text in files.items():
        (out / f"{stem}_{name}").write_text(text, encoding="utf-8")
    report["config"] = {k: v for k, v in cfg.items() if k != "out"}
    write_json(out / f"{stem}.json", report)
    if report["passed"]:
        if failures_path.exists():
            failures_path.unlink()
        return 0
    write_json(failures_path, {"command": cfg["command"], "failures": report["failures"]})
    shown = report["failures"][:MAX_LISTED]
    for name in shown:
        print(f"FAILED: {name}", file=sys.stderr)
    if len(report["failures"]) > len(shown):
        print(f"... {len(report['failures']) - len(shown)} more in {failures_path}", file=sys.stderr)
    return 2 if report.get("error") else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (OSError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
