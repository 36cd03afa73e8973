"""Solutions of the base wave equation ``w_rr - A w = 0``.

Each constructor returns a :class:`BaseSolution` with ``w(x, 0; b) = f(x, b)``
and ``w_r(x, 0; b) = 0``.  Spatial points are scalars in one dimension and
arrays with a trailing axis of length ``dim`` otherwise; ``r`` and ``b``
broadcast against the leading shape of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, ParameterError
from .params import TricomiParams


@dataclass(frozen=True)
class SourceProfile:
    """Right-hand side ``f(x, b)``, assumed twice differentiable in x."""

    f: Callable

    def __call__(self, x, b):
        return self.f(x, b)


def _as_profile(f) -> SourceProfile:
    return f if isinstance(f, SourceProfile) else SourceProfile(f)


@dataclass(frozen=True)
class BaseSolution:
    eval: Callable
    trace0: Callable
    trace1: Callable
    dim: int = 1

    def __call__(self, x, r, b):
        return self.eval(x, r, b)

    def __add__(self, other: "BaseSolution") -> "BaseSolution":
        if self.dim != other.dim:
            raise ParameterError("cannot add base solutions of different dimension")
        return BaseSolution(
            eval=lambda x, r, b: self.eval(x, r, b) + other.eval(x, r, b),
            trace0=lambda x, b: self.trace0(x, b) + other.trace0(x, b),
            trace1=lambda x, b: self.trace1(x, b) + other.trace1(x, b),
            dim=self.dim,
        )

    def scaled(self, factor: float) -> "BaseSolution":
        return BaseSolution(
            eval=lambda x, r, b: factor * self.eval(x, r, b),
            trace0=lambda x, b: factor * self.trace0(x, b),
            trace1=lambda x, b: factor * self.trace1(x, b),
            dim=self.dim,
        )


def dalembert_1d(f) -> BaseSolution:
    """Even extension in r of the one-dimensional d'Alembert solution."""
    prof = _as_profile(f)

    def ev(x, r, b):
        return 0.5 * (prof(x + r, b) + prof(x - r, b))

    return BaseSolution(eval=ev, trace0=prof.f,
                        trace1=lambda x, b: np.zeros(np.broadcast(x, b).shape), dim=1)


def _ddr_r_times(mean, x, r, b, h=1e-3):
    # d/dr [r * mean(r)] by a sixth-order central difference; mean is even in r
    r = np.asarray(r, dtype=float)
    coef = ((1, 3.0 / 4.0), (2, -3.0 / 20.0), (3, 1.0 / 60.0))
    acc = 0.0
    for k, w in coef:
        acc = acc + w * ((r + k * h) * mean(x, r + k * h, b) - (r - k * h) * mean(x, r - k * h, b))
    return acc / h


class _SphereRule:
    """Product Gauss-Legendre (in cos theta) by trapezoid (in azimuth) rule
    on the unit sphere, weights normalised to sum to one."""

    def __init__(self, nodes: int):
        mu, wmu = np.polynomial.legendre.leggauss(nodes)
        naz = 2 * nodes
        az = 2.0 * np.pi * np.arange(naz) / naz
        sin_t = np.sqrt(1.0 - mu ** 2)
        pts = np.stack([
            np.outer(sin_t, np.cos(az)).ravel(),
            np.outer(sin_t, np.sin(az)).ravel(),
            np.repeat(mu, naz),
        ], axis=-1)
        w = np.repeat(wmu, naz)
        self.points = pts
        self.weights = w / w.sum()


class _DiskRule:
    """Rule for ``int_{|y|<1} g(y) / sqrt(1 - |y|^2) dy`` using the radial
    substitution ``rho = sqrt(1 - u^2)``, which absorbs the weight, then
    Gauss-Legendre in u and the trapezoid rule in angle.  The weights are
    normalised so that ``g = 1`` integrates to one."""

    def __init__(self, nodes: int):
        u, wu = np.polynomial.legendre.leggauss(nodes)
        u = 0.5 * (u + 1.0)
        wu = 0.5 * wu
        rho = np.sqrt(1.0 - u * u)
        nang = 2 * nodes
        ang = 2.0 * np.pi * np.arange(nang) / nang
        pts = np.stack([np.outer(rho, np.cos(ang)).ravel(),
                        np.outer(rho, np.sin(ang)).ravel()], axis=-1)
        w = np.repeat(wu, nang)
        self.raw_total = float(w.sum() * 2.0 * np.pi / nang)
        self.points = pts
        self.weights = w / w.sum()


def _spatial_mean(prof, rule, x, r, b):
    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    b = np.asarray(b, dtype=float)
    lead = np.broadcast_shapes(x.shape[:-1], r.shape, b.shape)
    xs = np.broadcast_to(x, lead + x.shape[-1:])
    rs = np.broadcast_to(r, lead)
    bs = np.broadcast_to(b, lead)
    pts = xs[..., None, :] + rs[..., None, None] * rule.points
    vals = prof(pts, bs[..., None])
    return vals @ rule.weights


def _mean_solution(f, rule, dim, check_nodes):
    prof = _as_profile(f)

    def mean(x, r, b):
        return _spatial_mean(prof, rule, x, r, b)

    def ev(x, r, b):
        return _ddr_r_times(mean, x, r, b)

    def trace1(x, b):
        x = np.asarray(x, dtype=float)
        return np.zeros(np.broadcast_shapes(x.shape[:-1], np.shape(b)))

    def trace0(x, b):
        return prof(np.asarray(x, dtype=float), b)

    if check_nodes:
        # f = 1 must reproduce itself; catches a malformed rule at build time
        one = _ddr_r_times(lambda x, r, b: _spatial_mean(
            SourceProfile(lambda y, bb: np.ones(np.broadcast_shapes(y.shape[:-1], np.shape(bb)))),
            rule, x, r, b), np.zeros(dim), 0.7, 0.0)
        if abs(one - 1.0) > 1e-10:
            raise ConvergenceError(f"quadrature normalisation failed: {one}")
    return BaseSolution(eval=ev, trace0=trace0, trace1=trace1, dim=dim)


def kirchhoff_3d(f, nodes: int = 24) -> BaseSolution:
    """``w = d/dr [r * M_f(x, r)]`` with ``M_f`` the mean over the unit sphere."""
    return _mean_solution(f, _SphereRule(nodes), 3, True)


def poisson_2d(f, nodes: int = 24) -> BaseSolution:
    """``w = d/dr [r * P_f(x, r)]`` with ``P_f`` the normalised disk average of
    ``f(x + r y)`` against ``1 / sqrt(1 - |y|^2)``."""
    return _mean_solution(f, _DiskRule(nodes), 2, True)


def separable_solution(k, g: Callable = None) -> BaseSolution:
    """``cos(k . x) cos(|k| r) g(b)``.

    A scalar ``k`` gives a one-dimensional solution; a vector gives
    ``dim = len(k)``.
    """
    if g is None:
        g = lambda b: np.ones(np.shape(b))  # noqa: E731
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    knorm = float(np.linalg.norm(k_arr))
    if np.ndim(k) == 0:
        kk = float(k)

        def phase(x):
            return kk * np.asarray(x, dtype=float)
        dim = 1
    else:
        def phase(x):
            return np.asarray(x, dtype=float) @ k_arr
        dim = k_arr.size

    def ev(x, r, b):
        return np.cos(phase(x)) * np.cos(knorm * np.asarray(r, dtype=float)) * g(b)

    def trace0(x, b):
        return np.cos(phase(x)) * g(b)

    def trace1(x, b):
        return np.zeros(np.broadcast(phase(x), b).shape)

    return BaseSolution(eval=ev, trace0=trace0, trace1=trace1, dim=dim)


def base_residual_fd(w: BaseSolution, x, r, b, h: float = 1e-3) -> float:
    """Finite-difference value of ``w_rr - Laplacian w`` at one point."""
    x = np.asarray(x, dtype=float)
    c = w.eval(x, r, b)
    w_rr = (w.eval(x, r + h, b) - 2.0 * c + w.eval(x, r - h, b)) / h ** 2
    lap = 0.0
    if w.dim == 1:
        lap = (w.eval(x + h, r, b) - 2.0 * c + w.eval(x - h, r, b)) / h ** 2
    else:
        for i in range(w.dim):
            e = np.zeros(w.dim)
            e[i] = h
            lap = lap + (w.eval(x + e, r, b) - 2.0 * c + w.eval(x - e, r, b)) / h ** 2
    return float(w_rr - lap)


class SeparableOracle:
    """Callable ``U(t)`` solving ``U'' + k^2 t^ell U = g(t)`` from ``t = 0``.

    Wraps a dense-output :func:`scipy.integrate.solve_ivp` run on
    ``[0, t_max]``.
    """

    def __init__(self, p: TricomiParams, k: float, g: Callable, t_max: float,
                 tol: float = 1e-11, u0: float = 0.0, u1: float = 0.0,
                 method: str = "DOP853"):
        if p.ell <= -2.0:
            raise ParameterError("ell must exceed -2")
        if p.ell < 0.0 and u0 != 0.0:
            raise ParameterError("nonzero U(0) with ell < 0 makes U'' unbounded at t = 0")
        ksq = float(np.dot(np.atleast_1d(k), np.atleast_1d(k)))
        ell = p.ell

        def rhs(t, y):
            coef = 0.0 if t == 0.0 else ksq * t ** ell
            return [y[1], g(t) - coef * y[0]]

        self.t_max = float(t_max)
        sol = solve_ivp(rhs, (0.0, self.t_max), [u0, u1], method=method,
                        rtol=tol, atol=tol * 1e-2, dense_output=True)
        if sol.status != 0:
            raise ConvergenceError(f"ODE integration failed near t = 0: {sol.message}")
        self._sol = sol
        self.nfev = sol.nfev

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > self.t_max * (1.0 + 1e-14)):
            raise ParameterError(f"oracle defined on [0, {self.t_max}]")
        out = self._sol.sol(t)[0]
        return float(out) if out.ndim == 0 else out

    def derivative(self, t):
        out = self._sol.sol(np.asarray(t, dtype=float))[1]
        return float(out) if np.ndim(out) == 0 else out


def ode_oracle_separable(p: TricomiParams, k, g: Callable, t_max: float,
                         tol: float = 1e-11, u0: float = 0.0, u1: float = 0.0,
                         method: str = "DOP853") -> SeparableOracle:
    """Reference solution ``U`` with ``u = cos(k x) U(t)`` solving the
    Tricomi-type equation with ``f = cos(k x) g(t)``."""
    return SeparableOracle(p, k, g, t_max, tol=tol, u0=u0, u1=u1, method=method)
