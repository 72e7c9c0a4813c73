"""Benchmark problems, exact reference solutions and error norms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from .grid import (
    BoundarySpec, ConfigurationError, Field, Grid1D, Grid2D, SideBC, dirichlet, outflow,
    periodic,
)
from .physics import GAMMA, EosParams, conserved_from_primitive

PROBLEMS = ("advect-smooth", "advect-step", "burgers-sine", "sod", "lax", "dmr")

SOD_LEFT = (1.0, 0.0, 1.0)
SOD_RIGHT = (0.125, 0.0, 0.1)
LAX_LEFT = (0.445, 0.698, 3.528)
LAX_RIGHT = (0.5, 0.0, 0.571)

DMR_PRE = (1.4, 0.0, 0.0, 1.0)
DMR_POST = (8.0, 8.25 * math.sin(math.pi / 3), -8.25 * math.cos(math.pi / 3), 116.5)
DMR_X0 = 1.0 / 6.0
DMR_SHOCK_SPEED = 10.0


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    equation: str
    domain: tuple
    t_end: float
    dim: int = 1
    has_exact: bool = False
    # smooth periodic data, sampled at x_j = a + j dx
    smooth: bool = False

    def make_grid(self, n: int, m: Optional[int] = None):
        if self.dim == 1:
            offset = 0.0 if self.smooth else 0.5
            return Grid1D(self.domain[0], self.domain[1], n, offset=offset)
        x0, x1, y0, y1 = self.domain
        if m is None:
            m = n // 4
        return Grid2D(x0, x1, y0, y1, n, m)


REGISTRY = {
    "advect-smooth": ProblemSpec("advect-smooth", "advection", (-1.0, 1.0), 0.5, has_exact=True,
                                  smooth=True),
    "advect-step": ProblemSpec("advect-step", "advection", (-1.0, 1.0), 0.5),
    "burgers-sine": ProblemSpec("burgers-sine", "burgers", (-1.0, 1.0), 0.2, has_exact=True,
                                 smooth=True),
    "sod": ProblemSpec("sod", "euler", (-0.5, 0.5), 0.2),
    "lax": ProblemSpec("lax", "euler", (-0.5, 0.5), 0.13),
    "dmr": ProblemSpec("dmr", "euler", (0.0, 4.0, 0.0, 1.0), 0.2, dim=2),
}


def get_problem(problem) -> ProblemSpec:
    if isinstance(problem, ProblemSpec):
        return problem
    try:
        return REGISTRY[problem]
    except KeyError:
        raise ConfigurationError(f"unknown problem {problem!r}; expected one of {PROBLEMS}") from None


def _check_domain(spec: ProblemSpec, grid) -> None:
    if spec.dim == 1:
        ok = isinstance(grid, Grid1D) and np.allclose((grid.a, grid.b), spec.domain)
    else:
        ok = isinstance(grid, Grid2D) and np.allclose(
            (grid.x0, grid.x1, grid.y0, grid.y1), spec.domain)
    if not ok:
        raise ConfigurationError(f"grid does not match the {spec.id} domain {spec.domain}")


def _riemann_init(x, left, right, eos) -> np.ndarray:
    prim = np.where(x[None, :] <= 0.0, np.array(left)[:, None], np.array(right)[:, None])
    return conserved_from_primitive(prim, eos)


def boundary(problem) -> BoundarySpec:
    spec = get_problem(problem)
    if spec.id in ("advect-smooth", "burgers-sine"):
        return BoundarySpec(periodic(), periodic())
    if spec.id == "advect-step":
        return BoundarySpec(dirichlet(1.0), outflow())
    if spec.id in ("sod", "lax"):
        return BoundarySpec(outflow(), outflow())
    raise ConfigurationError("dmr boundaries come from dmr_setup")


def init(problem, grid, eos: EosParams = EosParams()) -> Field:
    """Sample the initial data of ``problem`` at the cell centers of ``grid``."""
    spec = get_problem(problem)
    _check_domain(spec, grid)
    if spec.id == "dmr":
        return dmr_setup(grid, eos=eos)[0]
    x = grid.x
    if spec.id == "advect-smooth":
        u = np.sin(np.pi * x)
    elif spec.id == "advect-step":
        u = -np.sign(x)
    elif spec.id == "burgers-sine":
        u = -np.sin(np.pi * x)
    elif spec.id == "sod":
        u = _riemann_init(x, SOD_LEFT, SOD_RIGHT, eos)
    else:
        u = _riemann_init(x, LAX_LEFT, LAX_RIGHT, eos)
    return Field.from_interior(u, grid.ghost)


# ---------------------------------------------------------------------------
# exact solutions


def burgers_exact(x, t: float, tol: float = 1e-14, max_iter: int = 200) -> np.ndarray:
    """Solution of ``u_t + (u^2/2)_x = 0`` with ``u(x, 0) = -sin(pi x)``.

    Solves ``xi - t sin(pi xi) = x`` for the foot of the characteristic with a
    bracketed Newton iteration (bisection whenever Newton leaves the bracket),
    then returns ``u = -sin(pi xi)``.  Valid up to the shock time ``1/pi``.
    """
    if t > 1.0 / np.pi + 1e-15:
        raise ValueError(f"Burgers exact solution is unsupported after the shock time (t={t})")
    x = np.asarray(x, dtype=float)
    if t == 0.0:
        return -np.sin(np.pi * x)
    lo, hi = x - t, x + t
    xi = x.copy()
    for _ in range(max_iter):
        g = xi - t * np.sin(np.pi * xi) - x
        lo = np.where(g < 0, xi, lo)
        hi = np.where(g > 0, xi, hi)
        gp = 1.0 - t * np.pi * np.cos(np.pi * xi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = xi - g / gp
        inside = np.isfinite(step) & (step > lo) & (step < hi)
        new = np.where(inside, step, 0.5 * (lo + hi))
        # the u-form residual is up to pi times the residual in xi
        done = (np.abs(g) <= tol / 8) | (hi - lo <= 4 * np.finfo(float).eps * np.maximum(1, np.abs(x)))
        xi = np.where(done, xi, new)
        if done.all():
            break
    return -np.sin(np.pi * xi)


def exact_solution(problem, x, t: float) -> np.ndarray:
    spec = get_problem(problem)
    x = np.asarray(x, dtype=float)
    if spec.id == "advect-smooth":
        return np.sin(np.pi * (x - t))
    if spec.id == "advect-step":
        # domain inflow at x = -1 carries u = 1
        xi = x - t
        return np.where(xi < -1.0, 1.0, -np.sign(xi))
    if spec.id == "burgers-sine":
        return burgers_exact(x, t)
    raise ValueError(f"no closed-form solution for {spec.id}")


class VacuumError(ValueError):
    pass


@dataclass
class RiemannSolution:
    """Exact self-similar solution of the 1D Euler Riemann problem."""

    left: tuple
    right: tuple
    gamma: float
    p_star: float
    u_star: float

    def _f(self, p, rho, pk, c):
        g = self.gamma
        if p > pk:
            A = 2.0 / ((g + 1.0) * rho)
            B = (g - 1.0) / (g + 1.0) * pk
            return (p - pk) * math.sqrt(A / (p + B))
        return 2.0 * c / (g - 1.0) * ((p / pk) ** ((g - 1.0) / (2.0 * g)) - 1.0)

    def star_densities(self):
        g = self.gamma
        g6 = (g - 1.0) / (g + 1.0)
        out = []
        for rho, _, pk in (self.left, self.right):
            ratio = self.p_star / pk
            if ratio > 1.0:
                out.append(rho * (ratio + g6) / (g6 * ratio + 1.0))
            else:
                out.append(rho * ratio ** (1.0 / g))
        return tuple(out)

    def shock_speeds(self):
        """``(left, right)`` shock speeds, ``None`` for rarefaction sides."""
        g = self.gamma
        speeds = []
        for sgn, (rho, u, p) in ((-1, self.left), (1, self.right)):
            c = math.sqrt(g * p / rho)
            if self.p_star > p:
                speeds.append(u + sgn * c * math.sqrt(
                    (g + 1) / (2 * g) * self.p_star / p + (g - 1) / (2 * g)))
            else:
                speeds.append(None)
        return tuple(speeds)

    def sample(self, s) -> np.ndarray:
        """Primitive ``(rho, u, p)`` at similarity coordinates ``s = x / t``."""
        s = np.asarray(s, dtype=float)
        g = self.gamma
        g1 = g - 1.0
        rhoL, uL, pL = self.left
        rhoR, uR, pR = self.right
        cL, cR = math.sqrt(g * pL / rhoL), math.sqrt(g * pR / rhoR)
        ps, us = self.p_star, self.u_star
        rsL, rsR = self.star_densities()
        SL, SR = self.shock_speeds()

        rho = np.empty_like(s)
        u = np.empty_like(s)
        p = np.empty_like(s)

        def put(mask, r, v, q):
            rho[mask] = np.broadcast_to(r, s.shape)[mask]
            u[mask] = np.broadcast_to(v, s.shape)[mask]
            p[mask] = np.broadcast_to(q, s.shape)[mask]

        left = s <= us
        if SL is not None:
            put(left & (s <= SL), rhoL, uL, pL)
            put(left & (s > SL), rsL, us, ps)
        else:
            head, tail = uL - cL, us - cL * (ps / pL) ** (g1 / (2 * g))
            put(left & (s <= head), rhoL, uL, pL)
            put(left & (s > tail), rsL, us, ps)
            fan = left & (s > head) & (s <= tail)
            c = 2.0 / (g + 1.0) * (cL + 0.5 * g1 * (uL - s))
            put(fan, rhoL * (c / cL) ** (2 / g1), 2.0 / (g + 1.0) * (cL + 0.5 * g1 * uL + s),
                pL * (c / cL) ** (2 * g / g1))
        right = ~left
        if SR is not None:
            put(right & (s >= SR), rhoR, uR, pR)
            put(right & (s < SR), rsR, us, ps)
        else:
            head, tail = uR + cR, us + cR * (ps / pR) ** (g1 / (2 * g))
            put(right & (s >= head), rhoR, uR, pR)
            put(right & (s < tail), rsR, us, ps)
            fan = right & (s < head) & (s >= tail)
            c = 2.0 / (g + 1.0) * (cR - 0.5 * g1 * (uR - s))
            put(fan, rhoR * (c / cR) ** (2 / g1), 2.0 / (g + 1.0) * (-cR + 0.5 * g1 * uR + s),
                pR * (c / cR) ** (2 * g / g1))
        return np.stack([rho, u, p])


def solve_riemann(left, right, eos: EosParams = EosParams(), tol: float = 1e-12,
                  max_iter: int = 100) -> RiemannSolution:
    """Star state by Newton iteration on the pressure function."""
    g = eos.gamma
    rhoL, uL, pL = (float(v) for v in left)
    rhoR, uR, pR = (float(v) for v in right)
    if min(rhoL, rhoR, pL, pR) <= 0:
        raise ValueError("densities and pressures must be positive")
    cL, cR = math.sqrt(g * pL / rhoL), math.sqrt(g * pR / rhoR)
    du = uR - uL
    if 2.0 / (g - 1.0) * (cL + cR) <= du:
        raise VacuumError("initial data generate vacuum")
    sol = RiemannSolution((rhoL, uL, pL), (rhoR, uR, pR), g, 0.0, 0.0)

    z = (g - 1.0) / (2.0 * g)
    p = ((cL + cR - 0.5 * (g - 1.0) * du) / (cL / pL ** z + cR / pR ** z)) ** (1.0 / z)
    p = max(p, tol)

    def fprime(p, rho, pk, c):
        if p > pk:
            A = 2.0 / ((g + 1.0) * rho)
            B = (g - 1.0) / (g + 1.0) * pk
            return math.sqrt(A / (B + p)) * (1.0 - 0.5 * (p - pk) / (B + p))
        return (p / pk) ** (-(g + 1.0) / (2.0 * g)) / (rho * c)

    for _ in range(max_iter):
        fval = sol._f(p, rhoL, pL, cL) + sol._f(p, rhoR, pR, cR) + du
        deriv = fprime(p, rhoL, pL, cL) + fprime(p, rhoR, pR, cR)
        p_new = max(p - fval / deriv, tol)
        change = 2.0 * abs(p_new - p) / (p_new + p)
        p = p_new
        if change < tol:
            break
    else:
        raise RuntimeError("Riemann pressure iteration did not converge")
    sol.p_star = p
    sol.u_star = 0.5 * (uL + uR) + 0.5 * (sol._f(p, rhoR, pR, cR) - sol._f(p, rhoL, pL, cL))
    return sol


def exact_riemann(left, right, s, eos: EosParams = EosParams()) -> np.ndarray:
    return solve_riemann(left, right, eos).sample(s)


def riemann_reference(problem, x, t: float, eos: EosParams = EosParams()) -> np.ndarray:
    """Exact primitive profile of the ``sod`` or ``lax`` problem at time ``t``."""
    spec = get_problem(problem)
    states = {"sod": (SOD_LEFT, SOD_RIGHT), "lax": (LAX_LEFT, LAX_RIGHT)}
    if spec.id not in states:
        raise ValueError(f"{spec.id} is not a Riemann problem")
    x = np.asarray(x, dtype=float)
    if t <= 0:
        return np.where(x[None] <= 0, np.array(states[spec.id][0])[:, None],
                        np.array(states[spec.id][1])[:, None])
    return exact_riemann(*states[spec.id], x / t, eos)


# ---------------------------------------------------------------------------
# double Mach reflection


def dmr_shock_x(y, t: float):
    """x-position of the incident shock at height ``y`` and time ``t``."""
    return DMR_X0 + (np.asarray(y) + DMR_SHOCK_SPEED * 2.0 * t) / math.sqrt(3.0)


def _dmr_states(eos):
    pre = conserved_from_primitive(np.array(DMR_PRE), eos)
    post = conserved_from_primitive(np.array(DMR_POST), eos)
    return pre, post


def dmr_setup(grid: Grid2D, t: float = 0.0, eos: EosParams = EosParams()):
    """Initial field and boundary conditions for the double Mach reflection."""
    if not np.isclose((grid.x1 - grid.x0), 4.0 * (grid.y1 - grid.y0)) \
            or grid.nx != 4 * grid.ny:
        raise ConfigurationError("double Mach reflection needs a 4:1 grid")
    pre, post = _dmr_states(eos)
    g = grid.ghost
    X, Y = np.meshgrid(grid.x, grid.y, indexing="ij")
    behind = X < dmr_shock_x(Y, t)
    U = np.where(behind[None], post[:, None, None], pre[:, None, None])
    fld = Field.from_interior(U, g)

    xp = grid.x_padded

    def fill_bottom(v, grid_, tt):
        mirror = v[:, :, 2 * g - 1:g - 1:-1].copy()
        mirror[2] *= -1.0
        inflow = (xp < DMR_X0)[:, None]
        v[:, :, :g] = np.where(inflow[None], post[:, None, None], mirror)

    def fill_top(v, grid_, tt):
        yg = grid.y_padded[-g:]
        Xg, Yg = np.meshgrid(xp, yg, indexing="ij")
        behind_g = Xg < dmr_shock_x(Yg, tt)
        v[:, :, -g:] = np.where(behind_g[None], post[:, None, None], pre[:, None, None])

    bc = BoundarySpec(
        left=dirichlet(post),
        right=outflow(),
        bottom=SideBC("dmr", fill=fill_bottom),
        top=SideBC("dmr", fill=fill_top),
    )
    return fld, bc


def y_slice(values: np.ndarray, grid: Grid2D, y: float) -> np.ndarray:
    """Linear interpolation in ``y`` of interior ``values`` (..., nx, ny)."""
    yc = grid.y
    j = int(np.clip(np.searchsorted(yc, y) - 1, 0, grid.ny - 2))
    w = (y - yc[j]) / (yc[j + 1] - yc[j])
    return (1 - w) * values[..., j] + w * values[..., j + 1]


# ---------------------------------------------------------------------------
# error measurement


def error_norms(numeric, exact, grid) -> tuple:
    """``(L1, L2, Linf)`` with ``dx``-weighted discrete integrals."""
    e = np.abs(np.asarray(numeric, dtype=float) - np.asarray(exact, dtype=float))
    dx = grid.dx if hasattr(grid, "dx") else float(grid)
    return float(dx * e.sum()), float(math.sqrt(dx * (e ** 2).sum())), float(e.max())


def mean_norms(numeric, exact) -> tuple:
    """``(L1, L2)`` normalized by the cell count instead of ``dx``."""
    e = np.abs(np.asarray(numeric, dtype=float) - np.asarray(exact, dtype=float))
    return float(e.mean()), float(math.sqrt((e ** 2).mean()))


def observed_order(e_coarse: float, e_fine: float) -> float:
    return math.log2(e_coarse / e_fine)


@dataclass
class ErrorRow:
    n: int
    l1: float
    l2: float
    linf: float
    l1_mean: float = float("nan")
    l2_mean: float = float("nan")
    orders: Optional[tuple] = None


@dataclass
class ErrorReport:
    problem: str
    scheme: str
    k: int
    rows: List[ErrorRow] = field(default_factory=list)

    def add(self, row: ErrorRow) -> None:
        self.rows.append(row)
        self.refresh_orders()

    def refresh_orders(self) -> None:
        for prev, row in zip([None] + self.rows[:-1], self.rows):
            if prev is None or row.n != 2 * prev.n:
                row.orders = None
                continue
            row.orders = tuple(
                observed_order(a, b) if a > 0 and b > 0 else float("nan")
                for a, b in ((prev.l1, row.l1), (prev.l2, row.l2), (prev.linf, row.linf))
            )

    def finest_order(self, which: int = 0) -> Optional[float]:
        for row in reversed(self.rows):
            if row.orders is not None:
                return row.orders[which]
        return None
