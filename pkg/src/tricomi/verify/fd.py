"""Explicit finite-difference oracle for ``u_tt = t^ell u_xx + f`` in one
space dimension, and grid residual checks for candidate solutions."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import CFLViolation, ParameterError
from ..params import TricomiParams


@dataclass(frozen=True)
class Grid1D:
    """Periodic space grid ``x_j = x_min + j dx`` (``j < nx``) and time levels
    ``t_n = n dt`` for ``n = 0..nt``.

    ``t_start > 0`` selects the degenerate start: the solution is taken to be
    zero on the two levels nearest ``t_start`` and on all earlier ones.
    """

    x_min: float
    x_max: float
    t_max: float
    nx: int
    nt: int
    t_start: float = 0.0

    def __post_init__(self):
        if self.nx < 16 or self.nt < 16:
            raise ParameterError("grids need at least 16 points in x and t")
        if not self.x_max > self.x_min or not self.t_max > 0.0:
            raise ParameterError("empty grid extent")
        if self.t_start < 0.0:
            raise ParameterError("t_start must be nonnegative")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def dt(self) -> float:
        return self.t_max / self.nt

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.nx)

    @property
    def t(self) -> np.ndarray:
        return self.dt * np.arange(self.nt + 1)

    def refined(self, factor: int = 2) -> "Grid1D":
        return Grid1D(self.x_min, self.x_max, self.t_max, self.nx * factor,
                      self.nt * factor, self.t_start)


@dataclass
class GridFunction:
    """Samples ``values[j, n] = u(x_j, t_n)``; shape ``(nx, nt + 1)``."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.nx, self.grid.nt + 1):
            raise ParameterError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.nx}, {self.grid.nt + 1})")

    def at_time(self, t: float) -> np.ndarray:
        n = int(round(t / self.grid.dt))
        if abs(n * self.grid.dt - t) > 1e-9 * max(1.0, t) or not 0 <= n <= self.grid.nt:
            raise ParameterError(f"t = {t} is not a grid level")
        return self.values[:, n]

    def to_csv(self, value_name: str = "value") -> str:
        return grid_csv(self.grid.x, self.grid.t, self.values, value_name)


def grid_csv(x, t, values, value_name: str = "value") -> str:
    """CSV with header ``x,t,<value_name>``, rows ordered by t then x, 17
    significant digits."""
    buf = io.StringIO()
    buf.write(f"x,t,{value_name}\n")
    for n, tn in enumerate(t):
        for j, xj in enumerate(x):
            buf.write(f"{xj:.17g},{tn:.17g},{values[j, n]:.17g}\n")
    return buf.getvalue()


def _second_x(u, dx):
    return (np.roll(u, -1) - 2.0 * u + np.roll(u, 1)) / (dx * dx)


def cfl_number(p: TricomiParams, grid: Grid1D) -> float:
    """``dt * max_n t_n^(ell/2) / dx`` over the stepped levels."""
    levels = grid.t[1:]
    speed = float(np.max(levels ** (0.5 * p.ell)))
    return grid.dt * speed / grid.dx


def fd_tricomi(f: Callable, p: TricomiParams, grid: Grid1D) -> GridFunction:
    """Leapfrog scheme with zero Cauchy data at ``t = 0``.

    The first step uses ``u(x, dt) = dt^2 / 2 f(x, 0)``, which keeps the
    scheme second order; see :class:`Grid1D` for the degenerate-start
    variant.
    """
    if p.ell <= -2.0:
        raise ParameterError("ell must exceed -2")
    cfl = cfl_number(p, grid)
    if cfl > 1.0:
        raise CFLViolation(f"CFL number {cfl:.4f} > 1; refine nt")
    x, t, dt, dx = grid.x, grid.t, grid.dt, grid.dx
    u = np.zeros((grid.nx, grid.nt + 1))
    if grid.t_start > 0.0:
        n0 = max(0, int(round(grid.t_start / dt)) - 1)
    else:
        n0 = 0
        u[:, 1] = 0.5 * dt * dt * np.asarray(f(x, 0.0), dtype=float)
    for n in range(max(1, n0 + 1), grid.nt):
        speed2 = t[n] ** p.ell
        u[:, n + 1] = (2.0 * u[:, n] - u[:, n - 1]
                       + dt * dt * (speed2 * _second_x(u[:, n], dx)
                                    + np.asarray(f(x, t[n]), dtype=float)))
    return GridFunction(grid, u)


def sample_on_grid(u: Callable, grid: Grid1D, levels=None) -> np.ndarray:
    """Evaluate ``u(x_array, t)`` level by level; returns shape ``(nx, len)``."""
    levels = range(grid.nt + 1) if levels is None else levels
    return np.stack([np.asarray(u(grid.x, grid.t[n]), dtype=float) for n in levels], axis=1)


def residual_field(u: Callable, f: Callable, p: TricomiParams, grid: Grid1D):
    """Centred ``u_tt - t^ell u_xx - f`` on interior nodes with ``t >= 10 dt``.

    Returns ``(x, t, residual)`` with ``residual`` of shape
    ``(nx - 2, len(t))``.  Only nodes one cell inside the x range are used,
    so ``u`` need not be periodic.
    """
    n_lo = 10
    if n_lo + 1 > grid.nt:
        raise ParameterError("grid too coarse for the t >= 10 dt window")
    levels = list(range(n_lo - 1, grid.nt + 1))
    vals = sample_on_grid(u, grid, levels)
    dt, dx = grid.dt, grid.dx
    u_tt = (vals[:, 2:] - 2.0 * vals[:, 1:-1] + vals[:, :-2]) / (dt * dt)
    u_xx = (vals[2:, 1:-1] - 2.0 * vals[1:-1, 1:-1] + vals[:-2, 1:-1]) / (dx * dx)
    tc = grid.t[n_lo:grid.nt]
    xi = grid.x[1:-1]
    forcing = np.asarray(f(xi[:, None], tc[None, :]), dtype=float)
    res = u_tt[1:-1] - tc[None, :] ** p.ell * u_xx - forcing
    return xi, tc, res


def residual_on_grid(u: Callable, f: Callable, p: TricomiParams, grid: Grid1D) -> float:
    """Largest absolute grid residual of ``u`` (see :func:`residual_field`)."""
    _, _, res = residual_field(u, f, p, grid)
    return float(np.max(np.abs(res)))


def observed_order(errors, factor: float = 2.0) -> list[float]:
    """``log(e_k / e_{k+1}) / log(factor)`` for successive refinements."""
    return [math.log(a / b) / math.log(factor) for a, b in zip(errors[:-1], errors[1:])]
