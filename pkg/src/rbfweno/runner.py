"""Problem drivers shared by the command line and the acceptance tests."""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .grid import ConfigurationError, Field
from .physics import EosParams, make_equation, pressure, primitive_from_conserved
from .problems import (
    ErrorReport, ErrorRow, boundary, dmr_setup, error_norms, exact_solution, get_problem, init,
    mean_norms,
)
from .timestepping import RunInfo, SchemeConfig, SolverError, TimeConfig, integrate

DEFAULT_RESOLUTIONS = (10, 20, 40, 80, 160, 320)


@dataclass
class RunResult:
    problem: str
    scheme: SchemeConfig
    grid: object
    field: Optional[Field]
    info: RunInfo
    cfl: float
    t_end: float
    wall_time: float
    error: Optional[SolverError] = None

    @property
    def aborted(self) -> bool:
        return self.error is not None

    def primitive(self) -> np.ndarray:
        return primitive_from_conserved(self.field.interior)

    def metadata(self) -> dict:
        meta = {
            "problem": self.problem,
            "scheme": self.scheme.scheme,
            "k": self.scheme.k,
            "euler_mode": self.scheme.euler_mode,
            "switch": "on" if self.scheme.switch_on else "off",
            "cfl": self.cfl,
            "t_end": self.t_end,
            "wall_time_s": self.wall_time,
            "aborted": self.aborted,
            "abort_reason": str(self.error) if self.error else None,
            "abort_time": self.error.t if self.error else None,
        }
        if hasattr(self.grid, "n"):
            meta["N"] = self.grid.n
        else:
            meta["N"] = self.grid.nx
            meta["M"] = self.grid.ny
        meta.update(self.info.summary())
        if self.field is not None and self.field.values.shape[0] > 1:
            U = self.field.interior
            meta["rho_min"] = float(U[0].min())
            meta["p_min"] = float(pressure(U).min())
        return meta


def resolve_scheme(problem, scheme: SchemeConfig) -> SchemeConfig:
    """Copy of ``scheme`` carrying the smoothness flag of ``problem``."""
    return dataclasses.replace(scheme, smooth=get_problem(problem).smooth)


def run_problem(problem, scheme: SchemeConfig, n: int, m: Optional[int] = None,
                cfl: float = 0.1, t_end: Optional[float] = None,
                eos: EosParams = EosParams()) -> RunResult:
    """Set up ``problem`` on an ``n`` (x ``m``) grid and integrate it.

    A non-finite tendency does not raise; it is reported through
    ``RunResult.error`` with ``field`` left as ``None``.
    """
    spec = get_problem(problem)
    scheme = resolve_scheme(spec, scheme)
    t_end = spec.t_end if t_end is None else float(t_end)
    grid = spec.make_grid(n, m)
    if spec.id == "dmr":
        fld, bc = dmr_setup(grid, eos=eos)
    else:
        fld, bc = init(spec, grid, eos), boundary(spec)
    eq = make_equation(spec.equation, spec.dim, eos)
    start = time.perf_counter()
    err = None
    info = RunInfo()
    try:
        fld, info = integrate(fld, grid, eq, bc, scheme, TimeConfig(t_end, cfl))
    except SolverError as exc:
        err, fld = exc, None
    wall = time.perf_counter() - start
    return RunResult(spec.id, scheme, grid, fld, info, cfl, t_end, wall, err)


def convergence(problem, scheme: SchemeConfig, resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
                cfl: float = 0.1, t_end: Optional[float] = None) -> ErrorReport:
    """Error table against the closed-form solution on successive grids."""
    spec = get_problem(problem)
    if not spec.has_exact:
        raise ConfigurationError(f"{spec.id} has no closed-form solution for a convergence study")
    report = ErrorReport(spec.id, scheme.scheme, scheme.k)
    for n in resolutions:
        res = run_problem(spec, scheme, n, cfl=cfl, t_end=t_end)
        if res.aborted:
            raise res.error
        u = res.field.interior[0]
        ex = exact_solution(spec, res.grid.x, res.t_end)
        l1, l2, linf = error_norms(u, ex, res.grid)
        l1m, l2m = mean_norms(u, ex)
        report.add(ErrorRow(n, l1, l2, linf, l1m, l2m))
    return report
