"""Semi-discrete flux-difference operator and TVD-RK3 time stepping."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .grid import BoundarySpec, ConfigurationError, Field, Grid1D, Grid2D, fill_ghosts
from .physics import Equation, char_inverse, char_transform, lf_split
from .reconstruction import EPS_M, EtaStats, normalize_scheme, reconstruct

log = logging.getLogger(__name__)

EULER_MODES = ("characteristic", "componentwise")
SWITCH_MODES = ("auto", "on", "off")


class SolverError(RuntimeError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, message: str, cell=None, t: Optional[float] = None):
        super().__init__(message)
        self.cell = cell
        self.t = t


@dataclass
class TimeConfig:
    t_end: float
    cfl: float = 0.1
    dt_cap: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError(f"CFL number must lie in (0, 1], got {self.cfl}")
        if self.t_end < 0:
            raise ConfigurationError("t_end must be non-negative")


@dataclass
class SchemeConfig:
    k: int = 3
    scheme: str = "weno-js"
    euler_mode: str = "characteristic"
    eps_m: float = EPS_M
    # extremum switch of the RBF schemes; "auto" drops it for k = 2 on smooth data
    switch: str = "auto"
    smooth: bool = False

    def __post_init__(self) -> None:
        if self.k not in (2, 3):
            raise ConfigurationError(f"k must be 2 or 3, got {self.k}")
        self.scheme = normalize_scheme(self.scheme)
        if self.euler_mode not in EULER_MODES:
            raise ConfigurationError(f"euler mode must be one of {EULER_MODES}")
        if self.switch not in SWITCH_MODES:
            raise ConfigurationError(f"switch must be one of {SWITCH_MODES}")

    @property
    def switch_on(self) -> bool:
        if self.switch == "auto":
            return self.k == 3 or not self.smooth
        return self.switch == "on"


def interface_fluxes(U: np.ndarray, equation: Equation, axis: int, scheme: SchemeConfig,
                     alpha: float, ghost: int, stats: Optional[EtaStats] = None) -> np.ndarray:
    """Numerical fluxes at the ``n + 1`` interior interfaces along the last axis.

    ``U`` has components first and the sweep direction last, padded by
    ``ghost`` cells on both ends.
    """
    k = scheme.k
    if ghost < k:
        raise ConfigurationError(f"ghost width {ghost} too small for k={k}")
    n = U.shape[-1] - 2 * ghost
    start = ghost - k
    F = equation.flux(U, axis)
    Uw = sliding_window_view(U, 2 * k, axis=-1)[..., start:start + n + 1, :]
    Fw = sliding_window_view(F, 2 * k, axis=-1)[..., start:start + n + 1, :]

    R = None
    if equation.system and scheme.euler_mode == "characteristic":
        Ul = U[..., ghost - 1:ghost + n]
        Ur = U[..., ghost:ghost + n + 1]
        L, R = equation.eigensystem(Ul, Ur, axis)
        Uw = char_transform(Uw, L)
        Fw = char_transform(Fw, L)

    fplus, fminus = lf_split(Fw, Uw, alpha)
    sw = scheme.switch_on
    hat = reconstruct(fplus[..., : 2 * k - 1], k, scheme.scheme, scheme.eps_m, stats, sw)
    hat = hat + reconstruct(fminus[..., :0:-1], k, scheme.scheme, scheme.eps_m, stats, sw)
    if R is not None:
        hat = char_inverse(hat, R)
    return hat


def _check_finite(L: np.ndarray, t=None) -> None:
    bad = ~np.isfinite(L)
    if bad.any():
        cell = tuple(int(i) for i in np.argwhere(bad)[0][1:])
        raise SolverError(f"non-finite tendency at cell {cell}", cell=cell, t=t)


def rhs_1d(fld: Field, grid: Grid1D, equation: Equation, scheme: SchemeConfig,
           alpha: float, stats: Optional[EtaStats] = None) -> np.ndarray:
    """``-(f_{i+1/2} - f_{i-1/2}) / dx`` on interior cells; ghosts must be current."""
    hat = interface_fluxes(fld.values, equation, 0, scheme, alpha, fld.ghost, stats)
    L = -(hat[..., 1:] - hat[..., :-1]) / grid.dx
    _check_finite(L)
    return L


def rhs_2d(fld: Field, grid: Grid2D, equation: Equation, scheme: SchemeConfig,
           alpha, stats: Optional[EtaStats] = None) -> np.ndarray:
    """Dimension-by-dimension operator; ``alpha`` is ``(alpha_x, alpha_y)``."""
    ax, ay = alpha
    g = fld.ghost
    U = fld.values
    rows = np.moveaxis(U[:, :, g:-g], 1, -1)
    hx = interface_fluxes(rows, equation, 0, scheme, ax, g, stats)
    Lx = np.moveaxis(-(hx[..., 1:] - hx[..., :-1]) / grid.dx, -1, 1)
    cols = U[:, g:-g, :]
    hy = interface_fluxes(cols, equation, 1, scheme, ay, g, stats)
    Ly = -(hy[..., 1:] - hy[..., :-1]) / grid.dy
    L = Lx + Ly
    _check_finite(L)
    return L


def rk3_step(fld: Field, dt: float, rhs: Callable, t: float = 0.0,
             fill: Optional[Callable] = None) -> Field:
    """One Shu-Osher TVD-RK3 step.

    ``rhs(field, t)`` returns interior tendencies; ``fill(field, t)`` refills
    ghosts and runs before every stage evaluation.
    """
    def L(f: Field, tt: float) -> np.ndarray:
        if fill is not None:
            fill(f, tt)
        return rhs(f, tt)

    u0 = fld.interior.copy()
    u1 = fld.copy()
    u1.interior[...] = u0 + dt * L(fld, t)
    u2 = u1.copy()
    u2.interior[...] = 0.75 * u0 + 0.25 * (u1.interior + dt * L(u1, t + dt))
    out = u2.copy()
    out.interior[...] = u0 / 3.0 + 2.0 / 3.0 * (u2.interior + dt * L(u2, t + 0.5 * dt))
    return out


def cfl_dt(alpha, grid, config: TimeConfig, t: float = 0.0) -> float:
    """Stable step, truncated so the final step lands on ``t_end``."""
    remaining = config.t_end - t
    if isinstance(grid, Grid2D):
        ax, ay = alpha
        rate = ax / grid.dx + ay / grid.dy
    else:
        rate = float(alpha) / grid.dx
    if rate > 0:
        dt = config.cfl / rate
    else:
        dt = config.dt_cap if config.dt_cap is not None else remaining
    if config.dt_cap is not None:
        dt = min(dt, config.dt_cap)
    return min(dt, remaining)


@dataclass
class RunInfo:
    steps: int = 0
    t: float = 0.0
    dt_min: float = np.inf
    dt_max: float = 0.0
    dt_sum: float = 0.0
    eta: EtaStats = field(default_factory=EtaStats)

    def summary(self) -> dict:
        return {
            "steps": self.steps,
            "t_final": self.t,
            "dt_min": self.dt_min if self.steps else None,
            "dt_max": self.dt_max if self.steps else None,
            "dt_mean": self.dt_sum / self.steps if self.steps else None,
            "eta_evaluated": self.eta.evaluated,
            "eta_limited": self.eta.limited,
            "eta_clamped": self.eta.clamped,
        }


def integrate(fld: Field, grid, equation: Equation, bc: BoundarySpec, scheme: SchemeConfig,
              time: TimeConfig, t0: float = 0.0, max_steps: Optional[int] = None):
    """Advance ``fld`` from ``t0`` to ``time.t_end``; returns ``(field, RunInfo)``.

    The splitting speed is frozen over each full RK step.
    """
    two_d = isinstance(grid, Grid2D)
    info = RunInfo(t=t0)

    def fill(f: Field, tt: float) -> None:
        fill_ghosts(f, bc, tt, grid)

    t = t0
    fill(fld, t)
    while t < time.t_end - 1e-14 * max(1.0, abs(time.t_end)):
        U = fld.interior
        if two_d:
            alpha = (equation.max_speed(U, 0), equation.max_speed(U, 1))
        else:
            alpha = equation.max_speed(U, 0)
        dt = cfl_dt(alpha, grid, time, t)
        if two_d:
            def rhs(f, tt, a=alpha):
                return rhs_2d(f, grid, equation, scheme, a, info.eta)
        else:
            def rhs(f, tt, a=alpha):
                return rhs_1d(f, grid, equation, scheme, a, info.eta)
        try:
            fld = rk3_step(fld, dt, rhs, t, fill)
        except SolverError as err:
            err.t = t
            raise
        t = t + dt if t + dt < time.t_end else time.t_end
        info.steps += 1
        info.dt_min = min(info.dt_min, dt)
        info.dt_max = max(info.dt_max, dt)
        info.dt_sum += dt
        info.t = t
        if max_steps is not None and info.steps >= max_steps:
            break
    fill(fld, t)
    log.debug("integrated %d steps to t=%g", info.steps, t)
    return fld, info
