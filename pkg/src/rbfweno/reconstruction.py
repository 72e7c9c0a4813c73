"""Interface reconstruction kernels: ENO, RBF-ENO, WENO-JS and RBF-WENO-JS.

All kernels are vectorized over leading axes; the last axis of a window holds
the flux samples.  A *plus* window of width ``2k - 1`` is centered on cell ``i``
and the kernels return the value at ``x_{i+1/2}`` built from left-biased data.
Right-biased values are obtained by reversing a window (see
:func:`reconstruct_interface`).

Multiquadric coefficients are linear in ``eta = eps^2 dx^2``; ``eta = 0`` is the
polynomial limit and reproduces the classical ENO coefficients exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

SCHEMES = ("eno", "rbf-eno", "weno-js", "rbf-weno-js")

EPS_M = 1.0e-6
ETA_CLAMP = 2.0
DEN_TOL = 1.0e-10

ArrayLike = Union[float, np.ndarray]

# polynomial coefficients c_{rj}, j = 0..k-1, applied to f_{i-r+j}
POLY_TABLE = {
    2: {
        -1: (3 / 2, -1 / 2),
        0: (1 / 2, 1 / 2),
        1: (-1 / 2, 3 / 2),
    },
    3: {
        -1: (11 / 6, -7 / 6, 1 / 3),
        0: (1 / 3, 5 / 6, -1 / 6),
        1: (-1 / 6, 5 / 6, 1 / 3),
        2: (1 / 3, -7 / 6, 11 / 6),
    },
}

# multiquadric coefficients as (constant, slope in eta) pairs
RBF_TABLE = {
    2: {
        -1: ((3 / 2, -3 / 2), (-1 / 2, 1 / 2)),
        0: ((1 / 2, 1 / 4), (1 / 2, 1 / 4)),
        1: ((-1 / 2, 1 / 2), (3 / 2, -3 / 2)),
    },
    3: {
        -1: ((11 / 6, -9 / 2), (-7 / 6, 6.0), (1 / 3, -3 / 2)),
        0: ((1 / 3, 5 / 6), (5 / 6, -2 / 3), (-1 / 6, -1 / 6)),
        1: ((-1 / 6, -1 / 6), (5 / 6, -2 / 3), (1 / 3, 5 / 6)),
        2: ((1 / 3, -3 / 2), (-7 / 6, 6.0), (11 / 6, -9 / 2)),
    },
}

LINEAR_WEIGHTS = {
    2: (2 / 3, 1 / 3),
    3: (3 / 10, 3 / 5, 1 / 10),
}


class ReconstructionError(ValueError):
    pass


def normalize_scheme(scheme: str) -> str:
    s = scheme.strip().lower().replace("_", "-")
    if s not in SCHEMES:
        raise ReconstructionError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return s


def _check_kr(k: int, r: int) -> None:
    if k not in POLY_TABLE or r not in POLY_TABLE[k]:
        raise ReconstructionError(f"no coefficients for k={k}, r={r}")


@dataclass
class Eta:
    """Dimensionless shape parameter ``eps^2 dx^2``.

    ``limited`` marks values forced to the polynomial limit or clamped; a
    clamped value has magnitude :data:`ETA_CLAMP`.
    """

    value: ArrayLike
    limited: ArrayLike = False
    clamped: ArrayLike = False


@dataclass
class EtaStats:
    """Running counters of shape-parameter adaptation outcomes."""

    evaluated: int = 0
    limited: int = 0
    clamped: int = 0

    def record(self, eta: Eta) -> None:
        self.evaluated += int(np.size(eta.value))
        self.limited += int(np.count_nonzero(eta.limited))
        self.clamped += int(np.count_nonzero(eta.clamped))


@dataclass
class WenoWeights:
    d: np.ndarray
    beta: np.ndarray
    alpha: np.ndarray
    w: np.ndarray
    eps_m: float = EPS_M


@dataclass(frozen=True)
class StencilSpec:
    k: int
    r: int

    def __post_init__(self) -> None:
        _check_kr(self.k, self.r)

    @property
    def s(self) -> int:
        return self.k - 1 - self.r


# ---------------------------------------------------------------------------
# coefficient tables


def poly_coeffs(k: int, r: int) -> np.ndarray:
    _check_kr(k, r)
    return np.array(POLY_TABLE[k][r], dtype=float)


def rbf_coeffs(k: int, r: int, eta: Union[Eta, ArrayLike]) -> np.ndarray:
    """Multiquadric coefficients for stencil ``r``; stacked on the first axis."""
    _check_kr(k, r)
    e = eta.value if isinstance(eta, Eta) else eta
    e = np.asarray(e, dtype=float)
    return np.stack([const + e * slope for const, slope in RBF_TABLE[k][r]])


def linear_weights(k: int) -> np.ndarray:
    if k not in LINEAR_WEIGHTS:
        raise ReconstructionError(f"no linear weights for k={k}")
    return np.array(LINEAR_WEIGHTS[k], dtype=float)


# ---------------------------------------------------------------------------
# stencil selection and smoothness


def undivided_differences(window) -> list:
    """Forward difference table; level ``m`` holds ``Delta^m f_j`` (level 0 is ``f``)."""
    w = np.asarray(window, dtype=float)
    table = [w]
    while table[-1].shape[-1] > 1:
        table.append(np.diff(table[-1], axis=-1))
    return table


def eno_select(window, k: int) -> np.ndarray:
    """Left shift ``r`` of the ENO stencil for the cell at the window center.

    The stencil grows from ``{i}``; at each level it extends left only when the
    left candidate difference is strictly smaller in magnitude.
    """
    w = np.asarray(window, dtype=float)
    if w.shape[-1] < 2 * k - 1:
        raise ReconstructionError(f"ENO selection needs {2 * k - 1} points")
    c = w.shape[-1] // 2
    table = undivided_differences(w)
    left = np.full(w.shape[:-1], c, dtype=int)
    for m in range(1, k):
        lev = table[m]
        dl = np.take_along_axis(lev, (left - 1)[..., None], axis=-1)[..., 0]
        dr = np.take_along_axis(lev, left[..., None], axis=-1)[..., 0]
        left = np.where(np.abs(dl) < np.abs(dr), left - 1, left)
    return c - left


def beta_js(k: int, window) -> np.ndarray:
    """Jiang-Shu smoothness indicators, ordered ``r = 0..k-1`` on the first axis."""
    w = np.asarray(window, dtype=float)
    if w.shape[-1] != 2 * k - 1:
        raise ReconstructionError(f"smoothness indicators need {2 * k - 1} points")
    if k == 2:
        fm, f0, fp = w[..., 0], w[..., 1], w[..., 2]
        return np.stack([(fp - f0) ** 2, (f0 - fm) ** 2])
    if k == 3:
        fmm, fm, f0, fp, fpp = (w[..., j] for j in range(5))
        b0 = 13 / 12 * (f0 - 2 * fp + fpp) ** 2 + 0.25 * (3 * f0 - 4 * fp + fpp) ** 2
        b1 = 13 / 12 * (fm - 2 * f0 + fp) ** 2 + 0.25 * (fm - fp) ** 2
        b2 = 13 / 12 * (fmm - 2 * fm + f0) ** 2 + 0.25 * (fmm - 4 * fm + 3 * f0) ** 2
        return np.stack([b0, b1, b2])
    raise ReconstructionError(f"no smoothness indicators for k={k}")


def weno_weights(d, beta, eps_m: float = EPS_M) -> WenoWeights:
    d = np.asarray(d, dtype=float)
    beta = np.asarray(beta, dtype=float)
    dd = d.reshape(d.shape + (1,) * (beta.ndim - 1))
    alpha = dd / (eps_m + beta) ** 2
    w = alpha / alpha.sum(axis=0)
    return WenoWeights(d=d, beta=beta, alpha=alpha, w=w, eps_m=eps_m)


# ---------------------------------------------------------------------------
# shape-parameter adaptation


def _tol(*vals) -> np.ndarray:
    scale = np.abs(vals[0])
    for v in vals[1:]:
        scale = np.maximum(scale, np.abs(v))
    return DEN_TOL * np.maximum(1.0, scale)


def monotone_k2(fm, f0, fp) -> np.ndarray:
    """True when the quadratic through the block has an extremum inside it.

    The block spans ``[0, 3 dx]``; the extremum sits at
    ``x_p / dx = (-2 fm + 3 f0 - fp) / (-fm + 2 f0 - fp)``.  A degenerate
    (linear) quadratic counts as monotone.
    """
    fm, f0, fp = (np.asarray(v, dtype=float) for v in (fm, f0, fp))
    curv = -fm + 2 * f0 - fp
    ok = np.abs(curv) >= _tol(fm, f0, fp)
    xp = (-2 * fm + 3 * f0 - fp) / np.where(ok, curv, 1.0)
    return ok & (xp > 0) & (xp < 3)


def _finish_eta(num, den, force_zero, tol) -> Eta:
    bad = np.abs(den) < tol
    zero = force_zero | bad
    raw = num / np.where(zero, 1.0, den)
    raw = np.where(zero, 0.0, raw)
    clamped = np.abs(raw) > ETA_CLAMP
    value = np.where(clamped, np.sign(raw) * ETA_CLAMP, raw)
    return Eta(value=value, limited=zero | clamped, clamped=clamped)


def eta_k2(fm, f0, fp, switch: bool = True) -> Eta:
    """Adapted ``eta`` for ``k = 2`` from ``(f_{i-1}, f_i, f_{i+1})``.

    ``switch=False`` skips the extremum test and keeps only the guard and clamp.
    """
    fm, f0, fp = (np.asarray(v, dtype=float) for v in (fm, f0, fp))
    num = 2 * (-fm + 2 * f0 - fp)
    den = -fm + 5 * f0 + 2 * fp
    force = monotone_k2(fm, f0, fp) if switch else np.zeros(np.shape(num), dtype=bool)
    return _finish_eta(num, den, force, _tol(fm, f0, fp))


def eta_k3(fm, f0, fp, fpp, fmm=None, switch: bool = True) -> Eta:
    """Adapted ``eta`` for ``k = 3`` from ``(f_{i-1}, f_i, f_{i+1}, f_{i+2})``.

    Every 3-cell block of the available window is checked with
    :func:`monotone_k2`; passing ``fmm = f_{i-2}`` adds the leftmost block.
    """
    fm, f0, fp, fpp = (np.asarray(v, dtype=float) for v in (fm, f0, fp, fpp))
    num = fm - 3 * f0 + 3 * fp - fpp
    den = fm - 15 * f0 + 15 * fp - fpp
    extremum = np.zeros(np.shape(num), dtype=bool)
    if switch:
        extremum = monotone_k2(fm, f0, fp) | monotone_k2(f0, fp, fpp)
        if fmm is not None:
            extremum = extremum | monotone_k2(fmm, fm, f0)
    return _finish_eta(num, den, extremum, _tol(fm, f0, fp, fpp))


def adapt_eta(window, k: int, switch: bool = True) -> Eta:
    """Shared ``eta`` for the right interface of a plus window of width ``2k-1``."""
    w = np.asarray(window, dtype=float)
    if k == 2:
        return eta_k2(w[..., 0], w[..., 1], w[..., 2], switch)
    return eta_k3(w[..., 1], w[..., 2], w[..., 3], w[..., 4], fmm=w[..., 0], switch=switch)


# ---------------------------------------------------------------------------
# reconstruction


def _row_values(w: np.ndarray, k: int, eta: Optional[np.ndarray]) -> np.ndarray:
    """Sub-stencil values ``f^(r)_{i+1/2}`` for ``r = 0..k-1`` (first axis)."""
    c = k - 1
    rows = []
    for r in range(k):
        if eta is None:
            coeffs = POLY_TABLE[k][r]
        else:
            coeffs = [const + eta * slope for const, slope in RBF_TABLE[k][r]]
        val = coeffs[0] * w[..., c - r]
        for j in range(1, k):
            val = val + coeffs[j] * w[..., c - r + j]
        rows.append(val)
    return np.stack(rows)


def reconstruct(window, k: int, scheme: str, eps_m: float = EPS_M,
                stats: Optional[EtaStats] = None, switch: bool = True) -> np.ndarray:
    """Value at ``x_{i+1/2}`` from plus windows of width ``2k - 1``.

    ``switch`` enables the extremum test of the RBF variants.
    """
    scheme = normalize_scheme(scheme)
    if k not in (2, 3):
        raise ReconstructionError(f"k must be 2 or 3, got {k}")
    w = np.asarray(window, dtype=float)
    if w.shape[-1] != 2 * k - 1:
        raise ReconstructionError(
            f"{scheme} with k={k} needs a window of {2 * k - 1} points, got {w.shape[-1]}"
        )
    # stencil-major copy: every w[..., j] below is then a contiguous slab
    w = np.moveaxis(np.moveaxis(w, -1, 0).copy(), 0, -1)

    eta = None
    if scheme.startswith("rbf"):
        adapted = adapt_eta(w, k, switch)
        if stats is not None:
            stats.record(adapted)
        eta = adapted.value
    rows = _row_values(w, k, eta)

    if scheme in ("eno", "rbf-eno"):
        r = eno_select(w, k)
        return np.take_along_axis(rows, r[None, ...], axis=0)[0]
    weights = weno_weights(linear_weights(k), beta_js(k, w), eps_m)
    return (weights.w * rows).sum(axis=0)


def reconstruct_interface(k: int, scheme: str, window, side: str = "plus",
                          eps_m: float = EPS_M, switch: bool = True) -> float:
    """Reconstruct one interface value of the cell at the window center.

    ``side="plus"`` gives ``x_{i+1/2}`` from left-biased data; ``side="minus"``
    gives ``x_{i-1/2}`` from right-biased data by mirroring the window.
    """
    w = np.asarray(window, dtype=float)
    if side == "minus":
        w = w[..., ::-1]
    elif side != "plus":
        raise ReconstructionError(f"side must be 'plus' or 'minus', got {side!r}")
    return reconstruct(w, k, scheme, eps_m, switch=switch)
