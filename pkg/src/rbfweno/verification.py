"""Brute-force oracles and the self-check suite behind ``rbfweno verify``.

The oracles rebuild reconstruction weights from first principles (dense
multiquadric solves on the primitive function, Lagrange fits, symbolic-free
Taylor tests) so that the table-driven kernels can be cross-checked.
Dense solves run in extended precision because the kernel matrices are
nearly singular for small shape parameters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import mpmath
import numpy as np

from . import reconstruction as rc
from .grid import BoundarySpec, Field, Grid1D, fill_ghosts
from .physics import (
    Euler, EosParams, char_inverse, char_transform, conserved_from_primitive, flux_euler_1d,
    lf_split, make_equation,
)
from .problems import (
    DMR_POST, DMR_PRE, SOD_LEFT, SOD_RIGHT, burgers_exact, observed_order, solve_riemann,
)
from .timestepping import SchemeConfig, TimeConfig, integrate, rk3_step

DPS = 50


class RbfError(ArithmeticError):
    """Singular or numerically unusable interpolation system."""


def mq_kernel(x, xc, eps2: float):
    """Multiquadric ``sqrt(1 + eps2 (x - xc)^2)``; negative radicands are an error."""
    rad = 1.0 + eps2 * (np.asarray(x, dtype=float) - np.asarray(xc, dtype=float)) ** 2
    if np.any(rad <= 0.0):
        raise ValueError("multiquadric radicand is not positive")
    return np.sqrt(rad)


@dataclass
class RbfSystem:
    centers: list
    eps2: object
    matrix: object
    coeffs: object
    cond: float
    dps: int = DPS

    def __call__(self, x) -> float:
        with mpmath.workdps(self.dps):
            x = mpmath.mpf(x)
            return float(sum(lam * mpmath.sqrt(1 + self.eps2 * (x - c) ** 2)
                             for lam, c in zip(self.coeffs, self.centers)))

    def derivative(self, x) -> float:
        """Analytic derivative of the interpolant."""
        with mpmath.workdps(self.dps):
            x = mpmath.mpf(x)
            return float(sum(lam * self.eps2 * (x - c) / mpmath.sqrt(1 + self.eps2 * (x - c) ** 2)
                             for lam, c in zip(self.coeffs, self.centers)))


def rbf_interp(centers: Sequence[float], values: Sequence[float], eps2: float,
               dps: int = DPS) -> RbfSystem:
    """Solve the dense multiquadric system ``A lam = u`` by pivoted LU.

    Raises :class:`RbfError` when the system is singular or its condition
    estimate leaves fewer than 20 reliable digits at ``dps``.
    """
    if len(set(float(c) for c in centers)) != len(centers):
        raise RbfError("interpolation centers must be distinct")
    with mpmath.workdps(dps):
        c = [mpmath.mpf(v) for v in centers]
        e2 = mpmath.mpf(eps2)
        n = len(c)
        A = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                rad = 1 + e2 * (c[i] - c[j]) ** 2
                if rad <= 0:
                    raise ValueError("multiquadric radicand is not positive")
                A[i, j] = mpmath.sqrt(rad)
        u = mpmath.matrix([mpmath.mpf(v) for v in values])
        try:
            inv = mpmath.inverse(A)
        except ZeroDivisionError:
            raise RbfError("singular multiquadric system (condition estimate inf)") from None
        cond = float(mpmath.mnorm(A, 1) * mpmath.mnorm(inv, 1))
        if not math.isfinite(cond) or cond > 10.0 ** (dps - 20):
            raise RbfError(f"ill-conditioned multiquadric system, condition estimate {cond:.3e}")
        lam = mpmath.lu_solve(A, u)
        return RbfSystem(c, e2, A, [lam[i] for i in range(n)], cond, dps)


def _primitive(window, dx: float) -> np.ndarray:
    """``H`` at the k + 1 stencil interfaces, anchored at zero on the left."""
    return np.concatenate([[0.0], dx * np.cumsum(np.asarray(window, dtype=float))])


def flux_reconstruct_oracle(window, k: int, eps2: float, dx: float = 1.0, r: int = 0) -> float:
    """Interface value at ``x_{i+1/2}`` from the ``k`` samples ``f_{i-r} .. f_{i-r+k-1}``.

    Interpolates the primitive function on the ``k + 1`` stencil interfaces and
    differentiates the interpolant analytically.  ``eps2 == 0`` uses the
    polynomial (Lagrange) limit.
    """
    window = np.asarray(window, dtype=float)
    if window.shape != (k,):
        raise ValueError(f"oracle needs {k} samples")
    H = _primitive(window, dx)
    nodes = dx * np.arange(k + 1)
    x = dx * (r + 1)
    if eps2 == 0.0:
        poly = np.polynomial.Polynomial.fit(nodes, H, k, domain=[nodes[0], nodes[-1]])
        return float(poly.deriv()(x))
    for c in nodes:
        mq_kernel(x, c, eps2)
        mq_kernel(nodes, c, eps2)
    return rbf_interp(nodes, H, eps2).derivative(x)


def closed_form_k2(eta: float) -> float:
    """Exact two-point multiquadric weight shared by ``f_i`` and ``f_{i+1}``."""
    return (math.sqrt(4 * eta + 1) + 1) / (4 * math.sqrt(eta + 1))


def poly_coeffs_oracle(k: int, r: int) -> np.ndarray:
    """Polynomial-limit weights recovered by probing the oracle with unit vectors."""
    return np.array([flux_reconstruct_oracle(np.eye(k)[j], k, 0.0, 1.0, r) for j in range(k)])


def linear_weights_oracle(k: int) -> np.ndarray:
    """Weights ``d`` combining the k sub-stencils into the (2k-1)-point upwind stencil."""
    # the wide stencil spans f_{i-k+1} .. f_{i+k-1}; its shift is k - 1
    target = np.array([flux_reconstruct_oracle(np.eye(2 * k - 1)[j], 2 * k - 1, 0.0, 1.0, k - 1)
                       for j in range(2 * k - 1)])
    cols = []
    for r in range(k):
        row = np.zeros(2 * k - 1)
        row[k - 1 - r:2 * k - 1 - r] = poly_coeffs_oracle(k, r)
        cols.append(row)
    d, *_ = np.linalg.lstsq(np.array(cols).T, target, rcond=None)
    return d


def empirical_order(errors: Sequence[float], dxs: Sequence[float]) -> float:
    """Least-squares slope of ``log(error)`` against ``log(dx)``.

    Returns ``nan`` when an error vanishes (saturated).
    """
    e = np.asarray(errors, dtype=float)
    h = np.asarray(dxs, dtype=float)
    if len(e) < 3:
        raise ValueError("need at least three resolutions")
    if np.any(e <= 0):
        return float("nan")
    slope, _ = np.polyfit(np.log(h), np.log(e), 1)
    return float(slope)


def fit_order(error_fn: Callable[[float], float], dxs: Sequence[float]) -> float:
    return empirical_order([error_fn(h) for h in dxs], dxs)


def cell_averages(h_prim: Callable, x_left, dx: float) -> np.ndarray:
    """Exact averages of ``h`` over ``[x_left, x_left + dx]`` from its antiderivative."""
    return (h_prim(np.asarray(x_left) + dx) - h_prim(np.asarray(x_left))) / dx


# ---------------------------------------------------------------------------
# individual checks


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} {self.detail}".rstrip()


def _poly_limit() -> tuple:
    bad = [(k, r) for k in rc.POLY_TABLE for r in rc.POLY_TABLE[k]
           if not np.array_equal(rc.rbf_coeffs(k, r, 0.0), rc.poly_coeffs(k, r))]
    return not bad, f"mismatched rows {bad}" if bad else "all rows bit-equal"


def _poly_table_oracle() -> tuple:
    worst = 0.0
    for k in (2, 3):
        for r in range(-1, k):
            worst = max(worst, np.max(np.abs(poly_coeffs_oracle(k, r) - rc.poly_coeffs(k, r))))
    return worst < 1e-12, f"max deviation {worst:.2e}"


def _k3_row_sum() -> tuple:
    rng = np.random.default_rng(1)
    eta = rng.uniform(-2, 2, 1000)
    worst = max(np.max(np.abs(rc.rbf_coeffs(3, r, eta).sum(axis=0) - 1.0)) for r in range(-1, 3))
    return worst <= 1e-14, f"max |sum - 1| {worst:.2e}"


def _k2_row_sum() -> tuple:
    rng = np.random.default_rng(2)
    eta = rng.uniform(-2, 2, 1000)
    dev = np.max(np.abs(rc.rbf_coeffs(2, 0, eta).sum(axis=0) - (1 + eta / 2)))
    return dev <= 1e-15, f"max deviation {dev:.2e}"


def _k3_symmetry() -> tuple:
    eta = np.linspace(-1, 1, 21)
    ok = np.array_equal(rc.rbf_coeffs(3, 1, eta), rc.rbf_coeffs(3, 0, eta)[::-1])
    return ok, ""


def _closed_form() -> tuple:
    rng = np.random.default_rng(3)
    worst = 0.0
    n = 0
    while n < 1000:
        eps2 = rng.uniform(-0.1, 0.1)
        if eps2 == 0.0:
            continue
        f = 2.0 + np.sin(rng.uniform(0, 2 * np.pi) + rng.uniform(0.05, 0.5) * np.arange(2))
        got = flux_reconstruct_oracle(f, 2, eps2, 1.0)
        want = closed_form_k2(eps2) * f.sum()
        worst = max(worst, abs(got - want) / abs(want))
        n += 1
    return worst <= 1e-11, f"1000 cases, max rel error {worst:.2e}"


def _truncation_slope() -> tuple:
    f = np.array([1.3, 0.7])
    etas = np.logspace(-4, -1, 7)
    gap = [abs(flux_reconstruct_oracle(f, 2, e, 1.0) - rc.rbf_coeffs(2, 0, e) @ f) for e in etas]
    slope = float(np.polyfit(np.log(etas), np.log(gap), 1)[0])
    return slope >= 1.9, f"slope {slope:.3f}"


def _small_eps_lagrange() -> tuple:
    x = np.array([0.0, 0.5, 1.0])
    u = np.exp(x)
    lag = np.polynomial.Polynomial.fit(x, u, 2)
    mids = np.array([0.25, 0.75])
    gaps = []
    for e in (1e-2, 5e-3, 2.5e-3):
        s = rbf_interp(x, u, e)
        gaps.append(max(abs(s(m) - lag(m)) for m in mids))
    slope = float(np.polyfit(np.log([1e-2, 5e-3, 2.5e-3]), np.log(gaps), 1)[0])
    return abs(slope - 1.0) < 0.2, f"gap slope in eps2 {slope:.3f}"


def _adaptation_n2() -> tuple:
    h = lambda x: 2 + np.cos(x)
    h2 = lambda x: -np.cos(x)
    x0 = 0.3
    dxs = [0.4, 0.2, 0.1, 0.05]

    def err(dx, adapt):
        mid = x0 + dx / 2
        pts = [x0, x0 + dx]
        vals = [h(p) for p in pts]
        if not adapt:
            approx = 0.5 * (vals[0] + vals[1])
        else:
            approx = rbf_interp(pts, vals, h2(mid) / h(mid))(mid)
        return abs(approx - h(mid))

    p0 = fit_order(lambda d: err(d, False), dxs)
    p1 = fit_order(lambda d: err(d, True), dxs)
    ok = abs(p0 - 2) <= 0.3 and abs(p1 - 4) <= 0.3
    return ok, f"slopes {p0:.3f} -> {p1:.3f}"


def _interface_errors(scheme: str, k: int, dxs, x0: float = 0.4) -> list:
    H = lambda x: 2 * x - np.cos(x)  # antiderivative of 2 + sin
    out = []
    for dx in dxs:
        left = x0 + (np.arange(-(k - 1), k) - 1) * dx
        f = cell_averages(H, left, dx)
        val = rc.reconstruct(f, k, scheme)
        out.append(abs(val - (2 + np.sin(x0))))
    return out


def _order_check(scheme: str, k: int, lo: float, hi: float) -> Callable:
    def run():
        dxs = [0.04, 0.02, 0.01, 0.005]
        p = empirical_order(_interface_errors(scheme, k, dxs), dxs)
        return lo <= p <= hi, f"interface order {p:.3f}"
    return run


def _eta_limit() -> tuple:
    x0 = 0.4
    H = lambda x: 2 * x - np.cos(x)
    target = -(-np.sin(x0)) / (3 * (2 + np.sin(x0)))
    vals = []
    for dx in (1e-2, 5e-3, 2.5e-3):
        f = cell_averages(H, x0 + np.array([-2, -1, 0]) * dx, dx)
        vals.append(float(rc.eta_k2(*f, switch=False).value) / dx ** 2)
    # quadratic extrapolation in dx removes both the O(dx) and O(dx^2) terms
    rich = float(np.polyfit([1e-2, 5e-3, 2.5e-3], vals, 2)[-1])
    return abs(rich - target) < 1e-6, f"eta/dx^2 {rich:.8f} vs {target:.8f}"


def _weno_norm() -> tuple:
    rng = np.random.default_rng(4)
    worst = 0.0
    for k in (2, 3):
        beta = rng.exponential(1.0, (k, 1000)) * 10.0 ** rng.uniform(-12, 2, (k, 1000))
        w = rc.weno_weights(rc.linear_weights(k), beta).w
        worst = max(worst, np.max(np.abs(w.sum(axis=0) - 1)))
        if np.any(w < 0) or np.any(w > 1):
            return False, "weight outside [0, 1]"
    return worst <= 1e-14, f"max |sum - 1| {worst:.2e}"


def _linear_weights() -> tuple:
    dev = max(np.max(np.abs(linear_weights_oracle(k) - rc.linear_weights(k))) for k in (2, 3))
    return dev < 1e-12, f"max deviation {dev:.2e}"


def _weno_equal_beta() -> tuple:
    # quadratic data has equal k = 2 indicators only when first differences match
    f = np.array([1.0, 2.0, 3.0])
    val = rc.reconstruct(f, 2, "weno-js")
    rows = np.array([rc.poly_coeffs(2, 0) @ f[1:], rc.poly_coeffs(2, 1) @ f[:2]])
    want = rc.linear_weights(2) @ rows
    return abs(val - want) <= 1e-14, f"gap {abs(val - want):.2e}"


def _monotone_examples() -> tuple:
    got = (bool(rc.monotone_k2(0, 1, 2)), bool(rc.monotone_k2(0, 1, 0)), bool(rc.monotone_k2(0, 1, 3)))
    return got == (False, True, False), f"{got}"


def _switch_equals_eno() -> tuple:
    rng = np.random.default_rng(5)
    w = rng.normal(size=(500, 3))
    mask = rc.monotone_k2(w[:, 0], w[:, 1], w[:, 2])
    a = rc.reconstruct(w[mask], 2, "rbf-eno")
    b = rc.reconstruct(w[mask], 2, "eno")
    return bool(mask.any()) and np.array_equal(a, b), f"{int(mask.sum())} windows"


def _eno_step() -> tuple:
    r = int(rc.eno_select(np.array([0.0, 0.0, 1.0]), 2))
    return r == 1, f"r={r}"


def _periodic_conservation() -> tuple:
    worst = 0.0
    n = 64
    grid = Grid1D(-1.0, 1.0, n)
    bc = BoundarySpec.all_periodic()
    x = grid.x
    cases = [
        ("advection", np.sin(np.pi * x) + 0.5),
        ("burgers", 0.5 + 0.4 * np.sin(np.pi * x)),
    ]
    prim = np.stack([1 + 0.2 * np.sin(np.pi * x), 0.5 + 0 * x, 1 + 0 * x])
    cases.append(("euler", conserved_from_primitive(prim)))
    for name, u0 in cases:
        eq = make_equation(name)
        for scheme in rc.SCHEMES:
            fld = Field.from_interior(u0)
            before = fld.interior.sum(axis=-1).copy()
            fld, _ = integrate(fld, grid, eq, bc, SchemeConfig(3, scheme),
                               TimeConfig(1.0, 0.1), max_steps=100)
            after = fld.interior.sum(axis=-1)
            worst = max(worst, float(np.max(np.abs(after - before) / np.abs(before))))
    return worst <= 1e-12, f"max rel drift {worst:.2e}"


def _rk3_coefficients() -> tuple:
    dts = np.array([0.1, 0.2, 0.3, 0.4])
    vals = []
    for dt in dts:
        fld = Field.from_interior(np.array([1.0]), ghost=1)
        out = rk3_step(fld, dt, lambda f, t: -f.interior)
        vals.append(out.interior[0, 0])
    coeffs = np.linalg.solve(np.vander(dts, 4, increasing=True), vals)
    want = np.array([1.0, -1.0, 0.5, -1.0 / 6.0])
    dev = float(np.max(np.abs(coeffs - want)))
    return dev <= 1e-12, f"coefficients {np.round(coeffs, 12).tolist()}"


def _rk3_temporal_order() -> tuple:
    def final(dt):
        fld = Field.from_interior(np.array([1.0]), ghost=1)
        steps = int(round(1.0 / dt))
        for _ in range(steps):
            fld = rk3_step(fld, dt, lambda f, t: -f.interior)
        return abs(fld.interior[0, 0] - math.exp(-1.0))
    p = fit_order(final, [0.1, 0.05, 0.025, 0.0125])
    return 2.9 <= p <= 3.1, f"slope {p:.3f}"


def _char_round_trip() -> tuple:
    rng = np.random.default_rng(6)
    prim = np.stack([rng.uniform(0.2, 2, 50), rng.uniform(-1, 1, 50), rng.uniform(-1, 1, 50),
                     rng.uniform(0.2, 3, 50)])
    U = conserved_from_primitive(prim)
    eq = Euler(2)
    worst = 0.0
    for axis in (0, 1):
        L, R = eq.eigensystem(U[:, :-1], U[:, 1:], axis)
        eye = np.einsum("ab...,bc...->ac...", L, R)
        worst = max(worst, float(np.max(np.abs(eye - np.eye(4)[:, :, None]))))
        win = U[:, :-1, None] * np.ones(5)
        back = char_inverse(char_transform(win, L)[..., 2], R)
        worst = max(worst, float(np.max(np.abs(back - U[:, :-1]))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def _lf_split() -> tuple:
    rng = np.random.default_rng(7)
    prim = np.stack([rng.uniform(0.2, 2, 100), rng.uniform(-1, 1, 100), rng.uniform(0.2, 3, 100)])
    U = conserved_from_primitive(prim)
    F = flux_euler_1d(U)
    fp, fm = lf_split(F, U, 3.0)
    dev = float(np.max(np.abs(fp + fm - F) / np.maximum(1.0, np.abs(F))))
    return dev <= 1e-14, f"max rel deviation {dev:.2e}"


def _sod_star() -> tuple:
    eos = EosParams()
    sol = solve_riemann(SOD_LEFT, SOD_RIGHT, eos)
    g = eos.gamma

    def f_side(p, rho, pk):
        c = math.sqrt(g * pk / rho)
        if p > pk:
            A, B = 2 / ((g + 1) * rho), (g - 1) / (g + 1) * pk
            return (p - pk) * math.sqrt(A / (p + B))
        return 2 * c / (g - 1) * ((p / pk) ** ((g - 1) / (2 * g)) - 1)

    def phi(p):
        return f_side(p, SOD_LEFT[0], SOD_LEFT[2]) + f_side(p, SOD_RIGHT[0], SOD_RIGHT[2]) \
            + SOD_RIGHT[1] - SOD_LEFT[1]

    lo, hi = 1e-8, 10.0
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if phi(mid) < 0 else (lo, mid)
    p_ref = 0.5 * (lo + hi)
    dev = abs(sol.p_star - p_ref)
    return dev <= 1e-10, f"p*={sol.p_star:.10f} bisection {p_ref:.10f}"


def _sod_rankine_hugoniot() -> tuple:
    eos = EosParams()
    sol = solve_riemann(SOD_LEFT, SOD_RIGHT, eos)
    s = np.linspace(-2.0, 2.0, 10001)
    prim = sol.sample(s)
    rho = prim[0]
    j = int(np.argmax(np.abs(np.diff(rho)) * (s[:-1] > sol.u_star)))
    a, b = prim[:, j], prim[:, j + 1]
    speed = sol.shock_speeds()[1]
    Ua = conserved_from_primitive(a, eos)
    Ub = conserved_from_primitive(b, eos)
    resid = flux_euler_1d(Ub, eos) - flux_euler_1d(Ua, eos) - speed * (Ub - Ua)
    dev = float(np.max(np.abs(resid)))
    return dev <= 1e-10, f"jump residual {dev:.2e}"


def _dmr_states() -> tuple:
    M = 10.0
    rho_ratio = 6 * M ** 2 / (M ** 2 + 5)
    p_ratio = (7 * M ** 2 - 1) / 6
    ok = abs(DMR_POST[0] / DMR_PRE[0] - rho_ratio) < 1e-12 and abs(DMR_POST[3] - p_ratio) < 1e-12
    return ok, f"rho ratio {DMR_POST[0] / DMR_PRE[0]:.6f}, p2 {DMR_POST[3]}"


def _burgers_residual() -> tuple:
    x = np.linspace(-1, 1, 401)
    t = 0.2
    u = burgers_exact(x, t)
    res = float(np.max(np.abs(u + np.sin(np.pi * (x - u * t)))))
    return res < 1e-14, f"max residual {res:.2e}"


def _ghost_idempotent() -> tuple:
    grid = Grid1D(0.0, 1.0, 8)
    rng = np.random.default_rng(8)
    fld = Field.from_interior(rng.normal(size=8))
    fill_ghosts(fld, BoundarySpec.all_periodic())
    once = fld.values.copy()
    fill_ghosts(fld, BoundarySpec.all_periodic())
    return np.array_equal(once, fld.values), ""


def _order_formula() -> tuple:
    e = [n ** -3.0 for n in (10, 20, 40)]
    p = [observed_order(a, b) for a, b in zip(e, e[1:])]
    q = empirical_order([h ** 3 for h in (0.1, 0.05, 0.025)], [0.1, 0.05, 0.025])
    ok = all(abs(v - 3) < 1e-10 for v in p) and abs(q - 3) < 1e-10
    return ok, f"{p} {q:.12f}"


def _eta_examples() -> tuple:
    raw = 2 * 2 / 5
    e = rc.eta_k2(0.0, 1.0, 0.0, switch=False)
    c = rc.eta_k2(1.0, 1.0, 1.0)
    lin = rc.eta_k3(0.0, 1.0, 2.0, 3.0)
    ok = abs(float(e.value) - raw) < 1e-15 and float(c.value) == 0.0 and float(lin.value) == 0.0
    return ok, f"eta(0,1,0)={float(e.value)}"


CHECKS = [
    ("polynomial-limit", _poly_limit),
    ("poly-table-oracle", _poly_table_oracle),
    ("k3-row-sum", _k3_row_sum),
    ("k2-row-sum", _k2_row_sum),
    ("k3-row-symmetry", _k3_symmetry),
    ("closed-form-vs-dense-solve", _closed_form),
    ("truncated-coefficient-slope", _truncation_slope),
    ("small-shape-lagrange-limit", _small_eps_lagrange),
    ("adaptation-n2-slopes", _adaptation_n2),
    ("eta-k2-limit", _eta_limit),
    ("eta-examples", _eta_examples),
    ("rbf-eno-k2-interface-order", _order_check("rbf-eno", 2, 2.8, 3.2)),
    ("rbf-eno-k3-interface-order", _order_check("rbf-eno", 3, 3.7, 4.4)),
    ("eno-k2-interface-order", _order_check("eno", 2, 1.8, 2.2)),
    ("weno-weight-normalization", _weno_norm),
    ("linear-weights-oracle", _linear_weights),
    ("weno-equal-beta", _weno_equal_beta),
    ("monotone-examples", _monotone_examples),
    ("switch-equals-eno", _switch_equals_eno),
    ("eno-step-selection", _eno_step),
    ("periodic-conservation", _periodic_conservation),
    ("rk3-step-coefficients", _rk3_coefficients),
    ("rk3-temporal-order", _rk3_temporal_order),
    ("characteristic-round-trip", _char_round_trip),
    ("lf-split-reassembly", _lf_split),
    ("sod-star-pressure", _sod_star),
    ("sod-rankine-hugoniot", _sod_rankine_hugoniot),
    ("dmr-shock-states", _dmr_states),
    ("burgers-exact-residual", _burgers_residual),
    ("ghost-fill-idempotent", _ghost_idempotent),
    ("order-formula", _order_formula),
]


def run_checks(names: Optional[Sequence[str]] = None) -> List[Check]:
    """Run the suite (or the named subset); exceptions count as failures."""
    out = []
    for name, fn in CHECKS:
        if names is not None and name not in names:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"error: {exc!r}"
        out.append(Check(name, bool(passed), detail, time.perf_counter() - start))
    return out
