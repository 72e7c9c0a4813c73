"""Model-equation fluxes, Lax-Friedrichs splitting and Euler eigensystems.

State arrays carry components on axis 0 and any spatial layout after it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

GAMMA = 1.4


class StateError(ValueError):
    """Raised for non-physical gas states."""


@dataclass(frozen=True)
class EosParams:
    gamma: float = GAMMA

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1")


# ---------------------------------------------------------------------------
# scalar fluxes


def flux_advection(u):
    return np.asarray(u, dtype=float) * 1.0


def flux_burgers(u):
    u = np.asarray(u, dtype=float)
    return 0.5 * u * u


# ---------------------------------------------------------------------------
# Euler helpers


def pressure(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    rho, E = U[0], U[-1]
    kinetic = 0.5 * sum(U[m] ** 2 for m in range(1, U.shape[0] - 1)) / rho
    return (eos.gamma - 1.0) * (E - kinetic)


def conserved_from_primitive(prim, eos: EosParams = EosParams()) -> np.ndarray:
    """``(rho, u[, v], p)`` to ``(rho, rho u[, rho v], E)``."""
    prim = np.asarray(prim, dtype=float)
    rho, p = prim[0], prim[-1]
    vel = prim[1:-1]
    U = np.empty_like(prim)
    U[0] = rho
    U[1:-1] = rho * vel
    U[-1] = p / (eos.gamma - 1.0) + 0.5 * rho * (vel ** 2).sum(axis=0)
    return U


def primitive_from_conserved(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    prim = np.empty_like(U)
    prim[0] = U[0]
    prim[1:-1] = U[1:-1] / U[0]
    prim[-1] = pressure(U, eos)
    return prim


def _check_density(rho) -> None:
    if np.any(~(np.asarray(rho) > 0.0)):
        raise StateError("non-positive density")


def flux_euler_1d(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    rho, m, E = U[0], U[1], U[2]
    _check_density(rho)
    u = m / rho
    p = (eos.gamma - 1.0) * (E - 0.5 * m * u)
    return np.stack([m, m * u + p, (E + p) * u])


def flux_euler_2d_x(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    rho, mx, my, E = U
    _check_density(rho)
    u, v = mx / rho, my / rho
    p = (eos.gamma - 1.0) * (E - 0.5 * (mx * u + my * v))
    return np.stack([mx, mx * u + p, my * u, (E + p) * u])


_SWAP_2D = [0, 2, 1, 3]


def flux_euler_2d_y(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    return flux_euler_2d_x(U[_SWAP_2D], eos)[_SWAP_2D]


def sound_speed(U, eos: EosParams = EosParams()) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    p = pressure(U, eos)
    if np.any(~(p > 0.0)):
        raise StateError("non-positive pressure")
    return np.sqrt(eos.gamma * p / U[0])


# ---------------------------------------------------------------------------
# splitting


def lf_split(f, u, alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    """Global Lax-Friedrichs splitting ``f = f+ + f-``."""
    f = np.asarray(f, dtype=float)
    u = np.asarray(u, dtype=float)
    return 0.5 * (f + alpha * u), 0.5 * (f - alpha * u)


# ---------------------------------------------------------------------------
# characteristic decomposition


def roe_average(Ul, Ur, eos: EosParams = EosParams()):
    """Roe-averaged ``(velocities, H, c)`` between two conserved states."""
    Ul = np.asarray(Ul, dtype=float)
    Ur = np.asarray(Ur, dtype=float)
    _check_density(Ul[0])
    _check_density(Ur[0])
    sl, sr = np.sqrt(Ul[0]), np.sqrt(Ur[0])
    wsum = sl + sr
    vel = (Ul[1:-1] / sl + Ur[1:-1] / sr) / wsum
    Hl = (Ul[-1] + pressure(Ul, eos)) / Ul[0]
    Hr = (Ur[-1] + pressure(Ur, eos)) / Ur[0]
    H = (sl * Hl + sr * Hr) / wsum
    c2 = (eos.gamma - 1.0) * (H - 0.5 * (vel ** 2).sum(axis=0))
    if np.any(~(c2 > 0.0)):
        raise StateError("Roe average has non-positive sound speed")
    return vel, H, np.sqrt(c2)


def euler_eigenvectors(vel, H, c, eos: EosParams = EosParams()):
    """Left and right eigenvector matrices of the x-direction flux Jacobian.

    ``vel`` holds one (1D) or two (2D) velocity components.  Returned arrays
    have shape ``(nvar, nvar, ...)``; columns of ``R`` are right eigenvectors.
    """
    vel = np.asarray(vel, dtype=float)
    g1 = eos.gamma - 1.0
    u = vel[0]
    q2 = (vel ** 2).sum(axis=0)
    b1 = g1 / c ** 2
    b2 = 0.5 * b1 * q2
    one, zero = np.ones_like(u), np.zeros_like(u)
    if vel.shape[0] == 1:
        R = np.array([
            [one, one, one],
            [u - c, u, u + c],
            [H - u * c, 0.5 * q2, H + u * c],
        ])
        L = np.array([
            [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1 / c), 0.5 * b1],
            [1 - b2, b1 * u, -b1],
            [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1 / c), 0.5 * b1],
        ])
        return L, R
    v = vel[1]
    R = np.array([
        [one, one, zero, one],
        [u - c, u, zero, u + c],
        [v, v, one, v],
        [H - u * c, 0.5 * q2, v, H + u * c],
    ])
    L = np.array([
        [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1 / c), -0.5 * b1 * v, 0.5 * b1],
        [1 - b2, b1 * u, b1 * v, -b1],
        [-v, zero, one, zero],
        [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1 / c), -0.5 * b1 * v, 0.5 * b1],
    ])
    return L, R


def _batched(M) -> np.ndarray:
    """``(a, b, ...)`` matrices as a ``(..., a, b)`` stack for ``matmul``."""
    M = np.asarray(M, dtype=float)
    return np.moveaxis(M, (0, 1), (-2, -1))


def char_transform(window, L) -> np.ndarray:
    """Project ``window`` (nvar, ..., width) onto characteristic fields."""
    w = np.moveaxis(np.asarray(window, dtype=float), 0, -2)
    return np.moveaxis(_batched(L) @ w, -2, 0)


def char_inverse(values, R) -> np.ndarray:
    v = np.moveaxis(np.asarray(values, dtype=float), 0, -1)[..., None]
    return np.moveaxis((_batched(R) @ v)[..., 0], -1, 0)


# ---------------------------------------------------------------------------
# equation objects used by the solver


class Equation:
    """Common surface for the solver; ``axis`` is 0 for x and 1 for y."""

    name = ""
    nvar = 1
    system = False

    def flux(self, U, axis: int = 0) -> np.ndarray:
        raise NotImplementedError

    def max_speed(self, U, axis: int = 0) -> float:
        raise NotImplementedError

    def eigensystem(self, Ul, Ur, axis: int = 0):
        return None


class Advection(Equation):
    """``u_t + a . grad u = 0``, unit velocity in every direction by default."""

    name = "advection"

    def __init__(self, velocity=(1.0, 1.0)):
        self.velocity = tuple(float(a) for a in velocity)

    def flux(self, U, axis=0):
        return self.velocity[axis] * flux_advection(U)

    def max_speed(self, U, axis=0):
        return abs(self.velocity[axis])


class Burgers(Equation):
    name = "burgers"

    def flux(self, U, axis=0):
        return flux_burgers(U)

    def max_speed(self, U, axis=0):
        return float(np.max(np.abs(U)))


class Euler(Equation):
    system = True

    def __init__(self, dim: int = 1, eos: EosParams = EosParams()):
        if dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        self.dim = dim
        self.eos = eos
        self.nvar = dim + 2
        self.name = f"euler{dim}d"

    def _oriented(self, U, axis):
        return U[_SWAP_2D] if axis == 1 else U

    def flux(self, U, axis=0):
        if self.dim == 1:
            return flux_euler_1d(U, self.eos)
        return flux_euler_2d_y(U, self.eos) if axis == 1 else flux_euler_2d_x(U, self.eos)

    def max_speed(self, U, axis=0):
        U = np.asarray(U, dtype=float)
        c = sound_speed(U, self.eos)
        return float(np.max(np.abs(U[1 + axis] / U[0]) + c))

    def eigensystem(self, Ul, Ur, axis=0):
        vel, H, c = roe_average(self._oriented(Ul, axis), self._oriented(Ur, axis), self.eos)
        L, R = euler_eigenvectors(vel, H, c, self.eos)
        if axis == 1:
            L = L[:, _SWAP_2D]
            R = R[_SWAP_2D, :]
        return L, R


def max_wavespeed(U, equation: Equation, axis: int = 0) -> float:
    return equation.max_speed(U, axis)


def make_equation(name: str, dim: int = 1, eos: Optional[EosParams] = None) -> Equation:
    if name == "advection":
        return Advection()
    if name == "burgers":
        return Burgers()
    if name == "euler":
        return Euler(dim, eos or EosParams())
    raise ValueError(f"unknown equation {name!r}")
