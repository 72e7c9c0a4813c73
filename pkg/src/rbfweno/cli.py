"""Command line driver: ``run``, ``converge`` and ``verify``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from .grid import ConfigurationError
from .physics import primitive_from_conserved
from .problems import PROBLEMS, ErrorReport, get_problem, y_slice
from .reconstruction import SCHEMES, ReconstructionError
from .runner import DEFAULT_RESOLUTIONS, RunResult, convergence, run_problem
from .timestepping import EULER_MODES, SWITCH_MODES, SchemeConfig
from .verification import run_checks

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# option name -> (type, default); shared by flags and config files
OPTIONS = {
    "problem": (str, None),
    "scheme": (str, "weno-js"),
    "k": (int, 3),
    "n": (int, None),
    "m": (int, None),
    "cfl": (float, 0.1),
    "t_end": (float, None),
    "euler_mode": (str, "characteristic"),
    "switch": (str, "auto"),
    "out": (str, "out"),
    "resolutions": (str, None),
}

DEFAULT_N = {"advect-smooth": 160, "advect-step": 200, "burgers-sine": 160, "sod": 400,
             "lax": 200, "dmr": 160}


class UsageError(Exception):
    pass


def format_error(v: float) -> str:
    """Three significant digits, upper-case exponent without padding (``6.51E-7``)."""
    if not np.isfinite(v):
        return "nan"
    mant, exp = f"{v:.2E}".split("E")
    return f"{mant}E{int(exp)}"


def format_order(v: Optional[float]) -> str:
    return "" if v is None or not np.isfinite(v) else f"{v:.4f}"


def _num(v: float) -> str:
    return f"{v:.17g}"


def read_config(path: str) -> Dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in OPTIONS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def resolve_options(args: argparse.Namespace) -> dict:
    """Merge defaults, the optional config file and flags (flags win)."""
    cfg = read_config(args.config) if args.config else {}
    opts = {}
    for key, (typ, default) in OPTIONS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            opts[key] = flag
        elif key in cfg:
            try:
                opts[key] = typ(cfg[key])
            except ValueError:
                raise UsageError(f"bad value for {key}: {cfg[key]!r}") from None
        else:
            opts[key] = default
    if opts["problem"] is None:
        raise UsageError("--problem is required")
    if opts["problem"] not in PROBLEMS:
        raise UsageError(f"unknown problem {opts['problem']!r}; choose from {', '.join(PROBLEMS)}")
    if opts["scheme"] not in SCHEMES:
        raise UsageError(f"unknown scheme {opts['scheme']!r}; choose from {', '.join(SCHEMES)}")
    if opts["euler_mode"] not in EULER_MODES:
        raise UsageError(f"unknown euler mode {opts['euler_mode']!r}")
    if opts["switch"] not in SWITCH_MODES:
        raise UsageError(f"unknown switch mode {opts['switch']!r}")
    return opts


def _scheme(opts: dict) -> SchemeConfig:
    return SchemeConfig(k=opts["k"], scheme=opts["scheme"], euler_mode=opts["euler_mode"],
                        switch=opts["switch"])


def _write_atomic(path: Path, rows: List[Sequence[str]], comment: Optional[str] = None) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        csv.writer(fh).writerows(rows)
    os.replace(tmp, path)


def write_snapshot(res: RunResult, out: Path, stem: str) -> List[Path]:
    """Solution CSV files for one finished run; returns the written paths."""
    written = []
    if res.grid.__class__.__name__ == "Grid2D":
        grid = res.grid
        rho = res.field.interior[0]
        X, Y = np.meshgrid(grid.x, grid.y, indexing="ij")
        rows = [["x", "y", "rho"]]
        rows += [[_num(a), _num(b), _num(c)] for a, b, c in zip(X.ravel(), Y.ravel(), rho.ravel())]
        path = out / f"{stem}_density.csv"
        _write_atomic(path, rows, comment=f"nx={grid.nx}, ny={grid.ny}")
        written.append(path)
        cut = y_slice(rho, grid, 0.5)
        rows = [["x", "rho"]] + [[_num(a), _num(b)] for a, b in zip(grid.x, cut)]
        path = out / f"{stem}_slice_y0.5.csv"
        _write_atomic(path, rows)
        written.append(path)
        return written
    x = res.grid.x
    U = res.field.interior
    if U.shape[0] == 1:
        rows = [["x", "u"]] + [[_num(a), _num(b)] for a, b in zip(x, U[0])]
    else:
        prim = primitive_from_conserved(U)
        rows = [["x", "rho", "u", "p"]]
        rows += [[_num(v) for v in col] for col in zip(x, *prim)]
    path = out / f"{stem}.csv"
    _write_atomic(path, rows)
    written.append(path)
    return written


def cmd_run(opts: dict) -> int:
    spec = get_problem(opts["problem"])
    n = opts["n"] or DEFAULT_N[spec.id]
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    res = run_problem(spec, _scheme(opts), n, opts["m"], cfl=opts["cfl"], t_end=opts["t_end"])
    stem = f"{spec.id}_{opts['scheme']}_k{opts['k']}_n{n}"
    written = [] if res.aborted else write_snapshot(res, out, stem)
    meta = res.metadata()
    meta["files"] = [p.name for p in written]
    meta_path = out / f"{stem}_meta.json"
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    for p in written + [meta_path]:
        print(p)
    if res.aborted:
        print(f"aborted: {res.error}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def report_rows(report: ErrorReport) -> List[List[str]]:
    rows = [["N", "L1", "L1_order", "L2", "L2_order", "Linf", "Linf_order", "L1_mean", "L2_mean"]]
    for row in report.rows:
        o = row.orders or (None, None, None)
        rows.append([str(row.n), format_error(row.l1), format_order(o[0]),
                     format_error(row.l2), format_order(o[1]),
                     format_error(row.linf), format_order(o[2]),
                     format_error(row.l1_mean), format_error(row.l2_mean)])
    return rows


def parse_resolutions(text: Optional[str]) -> tuple:
    if text is None:
        return DEFAULT_RESOLUTIONS
    try:
        vals = tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise UsageError(f"bad resolution list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise UsageError("resolutions must be positive integers")
    return vals


def cmd_converge(opts: dict) -> int:
    spec = get_problem(opts["problem"])
    if not spec.has_exact:
        raise UsageError(f"{spec.id} has no closed-form solution; converge supports "
                         "advect-smooth and burgers-sine")
    resolutions = parse_resolutions(opts["resolutions"])
    report = convergence(spec, _scheme(opts), resolutions, cfl=opts["cfl"], t_end=opts["t_end"])
    rows = report_rows(report)
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{spec.id}_{opts['scheme']}_k{opts['k']}_convergence.csv"
    _write_atomic(path, rows)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    print(path)
    return EXIT_OK


def cmd_verify(opts: Optional[dict] = None) -> int:
    checks = run_checks()
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"checks={len(checks)} passed={len(checks) - failed} failed={failed}")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbfweno", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value file; flags override it")
        p.add_argument("--problem")
        p.add_argument("--scheme")
        p.add_argument("--k", type=int, choices=(2, 3))
        p.add_argument("--cfl", type=float)
        p.add_argument("--t-end", dest="t_end", type=float)
        p.add_argument("--euler-mode", dest="euler_mode")
        p.add_argument("--switch", help="extremum switch of the RBF schemes: auto, on or off")
        p.add_argument("--out")

    run = sub.add_parser("run", help="single run with snapshot output")
    common(run)
    run.add_argument("--n", type=int)
    run.add_argument("--m", type=int)

    conv = sub.add_parser("converge", help="error table over successive grids")
    common(conv)
    conv.add_argument("--resolutions", help="comma separated, default 10,20,40,80,160,320")

    sub.add_parser("verify", help="run the oracle self-checks")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "verify":
            return cmd_verify()
        opts = resolve_options(args)
        if args.command == "run":
            return cmd_run(opts)
        return cmd_converge(opts)
    except (UsageError, ConfigurationError, ReconstructionError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL
