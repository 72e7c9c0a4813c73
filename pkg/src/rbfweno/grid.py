"""Uniform grids, ghost-padded fields and boundary fills."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

GHOST = 3

BC_KINDS = ("periodic", "dirichlet", "outflow", "reflect", "dmr")


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    a: float
    b: float
    n: int
    ghost: int = GHOST
    # sample position inside each cell in units of dx; 0.5 is the cell center,
    # 0 puts samples on x_j = a + j dx
    offset: float = 0.5

    def __post_init__(self) -> None:
        if self.n < 1 or not self.b > self.a:
            raise ConfigurationError(f"bad grid [{self.a}, {self.b}] with n={self.n}")
        if not 0.0 <= self.offset < 1.0:
            raise ConfigurationError(f"offset must lie in [0, 1), got {self.offset}")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def x(self) -> np.ndarray:
        """Interior sample points, computed from the index."""
        return self.a + (np.arange(self.n) + self.offset) * self.dx

    @property
    def x_padded(self) -> np.ndarray:
        g = self.ghost
        return self.a + (np.arange(-g, self.n + g) + self.offset) * self.dx


@dataclass(frozen=True)
class Grid2D:
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int
    ghost: int = GHOST

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1 or not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ConfigurationError("bad 2D grid")

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    @property
    def x(self) -> np.ndarray:
        return self.x0 + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def y(self) -> np.ndarray:
        return self.y0 + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def x_padded(self) -> np.ndarray:
        g = self.ghost
        return self.x0 + (np.arange(-g, self.nx + g) + 0.5) * self.dx

    @property
    def y_padded(self) -> np.ndarray:
        g = self.ghost
        return self.y0 + (np.arange(-g, self.ny + g) + 0.5) * self.dy


@dataclass
class Field:
    """Cell values with ``ghost`` layers on every spatial side.

    ``values`` has shape ``(nvar, n + 2g)`` in 1D and ``(nvar, nx + 2g, ny + 2g)``
    in 2D; scalars use ``nvar == 1``.
    """

    values: np.ndarray
    ghost: int = GHOST

    @classmethod
    def from_interior(cls, interior: np.ndarray, ghost: int = GHOST) -> "Field":
        interior = np.asarray(interior, dtype=float)
        if interior.ndim == 1:
            interior = interior[None, :]
        pad = [(0, 0)] + [(ghost, ghost)] * (interior.ndim - 1)
        return cls(np.pad(interior, pad), ghost)

    @property
    def ndim(self) -> int:
        return self.values.ndim - 1

    @property
    def interior(self) -> np.ndarray:
        g = self.ghost
        idx = (slice(None),) + (slice(g, -g),) * self.ndim
        return self.values[idx]

    def copy(self) -> "Field":
        return Field(self.values.copy(), self.ghost)


@dataclass(frozen=True)
class SideBC:
    kind: str
    state: Optional[Sequence[float]] = None
    # component index of the wall-normal momentum for ``reflect``
    normal: Optional[int] = None
    # ``dmr``: fill(values, grid, t) writes the ghosts of this side
    fill: Optional[Callable] = None

    def __post_init__(self) -> None:
        if self.kind not in BC_KINDS:
            raise ConfigurationError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "dirichlet" and self.state is None:
            raise ConfigurationError("dirichlet boundary needs a state")
        if self.kind == "dmr" and self.fill is None:
            raise ConfigurationError("dmr boundary needs a fill callable")


def periodic() -> SideBC:
    return SideBC("periodic")


def outflow() -> SideBC:
    return SideBC("outflow")


def dirichlet(state) -> SideBC:
    return SideBC("dirichlet", state=tuple(np.atleast_1d(np.asarray(state, dtype=float))))


def reflect(normal: Optional[int] = None) -> SideBC:
    return SideBC("reflect", normal=normal)


@dataclass(frozen=True)
class BoundarySpec:
    left: SideBC
    right: SideBC
    bottom: Optional[SideBC] = None
    top: Optional[SideBC] = None

    def __post_init__(self) -> None:
        pairs = [(self.left, self.right)]
        if self.bottom is not None or self.top is not None:
            if self.bottom is None or self.top is None:
                raise ConfigurationError("2D boundary spec needs both bottom and top")
            pairs.append((self.bottom, self.top))
        for lo, hi in pairs:
            if (lo.kind == "periodic") != (hi.kind == "periodic"):
                raise ConfigurationError("periodic must be set on both paired sides")

    @classmethod
    def all_periodic(cls, dim: int = 1) -> "BoundarySpec":
        if dim == 1:
            return cls(periodic(), periodic())
        return cls(periodic(), periodic(), periodic(), periodic())


def _fill_axis(v: np.ndarray, axis: int, g: int, lo: SideBC, hi: SideBC,
               grid, t: float, names: tuple) -> None:
    """Fill the ghost slabs of ``v`` along spatial ``axis`` (>= 1)."""
    n = v.shape[axis] - 2 * g

    def sl(start, stop, step=None):
        idx = [slice(None)] * v.ndim
        idx[axis] = slice(start, stop, step)
        return tuple(idx)

    if lo.kind == "periodic":
        v[sl(0, g)] = v[sl(n, n + g)]
        v[sl(n + g, n + 2 * g)] = v[sl(g, 2 * g)]
        return

    for side, bc in zip(names, (lo, hi)):
        ghost = sl(0, g) if side in ("left", "bottom") else sl(n + g, n + 2 * g)
        if bc.kind == "dirichlet":
            state = np.asarray(bc.state, dtype=float)
            shape = [1] * v.ndim
            shape[0] = v.shape[0]
            v[ghost] = state.reshape(shape)
        elif bc.kind == "outflow":
            edge = sl(g, g + 1) if side in ("left", "bottom") else sl(n + g - 1, n + g)
            v[ghost] = v[edge]
        elif bc.kind == "reflect":
            if side in ("left", "bottom"):
                mirror = sl(2 * g - 1, g - 1, -1)
            else:
                mirror = sl(n + g - 1, n - 1, -1)
            v[ghost] = v[mirror]
            if bc.normal is not None:
                v[(bc.normal,) + ghost[1:]] *= -1.0
        elif bc.kind == "dmr":
            bc.fill(v, grid, t)


def fill_ghosts(fld: Field, spec: BoundarySpec, t: float = 0.0, grid=None) -> Field:
    """Populate every ghost cell of ``fld`` in place and return it."""
    v, g = fld.values, fld.ghost
    _fill_axis(v, 1, g, spec.left, spec.right, grid, t, ("left", "right"))
    if fld.ndim == 2:
        if spec.bottom is None:
            raise ConfigurationError("2D field needs bottom/top boundaries")
        _fill_axis(v, 2, g, spec.bottom, spec.top, grid, t, ("bottom", "top"))
    return fld
