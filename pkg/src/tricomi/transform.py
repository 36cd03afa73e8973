"""Integral transforms producing solutions of ``u_tt - t^ell A u = f``.

``apply_K`` turns a family ``w(x, r; b)`` of base-equation solutions (one per
subsidiary time ``b``) into a solution with zero Cauchy data.  ``apply_K0``
and ``apply_K1`` turn one base solution into solutions of the homogeneous
equation carrying prescribed ``u(x, 0)`` and ``u_t(x, 0)``.

All operators evaluate pointwise in x but accept an array of points, which
lets a whole row of a grid share one set of kernel evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ParameterError, ToleranceNotMet
from .kernel import kernel_values
from .params import TricomiParams, phi
from .quadrature import QuadratureSpec, gauss_jacobi_rule, rule_for
from .specfun import gamma_fn, hyp2f1
from .wave import BaseSolution

__all__ = [
    "QuadratureSpec", "TransformResult", "apply_K", "source_residual_term",
    "apply_K0", "apply_K1", "solve_cauchy", "with_odd_trace",
]

DEFAULT_K_RULE = QuadratureSpec(scheme="adaptive", nodes=65)
DEFAULT_JACOBI = QuadratureSpec(scheme="gauss_jacobi", nodes=40)


@dataclass(frozen=True)
class TransformResult:
    value: Union[float, np.ndarray]
    est_error: Union[float, np.ndarray]
    nodes_used: int


def _distances(p: TricomiParams, t: float, frac, frac_c):
    """``phi(b)`` and ``phi(t) - phi(b)`` for ``b = t * frac`` without
    cancellation when ``b`` is close to ``t``."""
    kappa = p.speed_power
    pt = phi(p, t)
    pb = pt * frac ** kappa
    # near b = t form 1 - frac^kappa from the complement to avoid cancellation
    near_top = frac > 0.5
    safe_c = np.where(near_top, frac_c, 0.0)
    spread = pt * np.where(near_top, -np.expm1(kappa * np.log1p(-safe_c)), 1.0 - frac ** kappa)
    return pt, pb, spread


def _spatial_axis(w_dim: int, x, extra: int):
    x = np.asarray(x, dtype=float)
    if w_dim == 1:
        return x.reshape(x.shape + (1,) * extra)
    return x.reshape(x.shape[:-1] + (1,) * extra + x.shape[-1:])


def _leading_shape(w_dim: int, x):
    x = np.asarray(x, dtype=float)
    return x.shape if w_dim == 1 else x.shape[:-1]


def _finish(value, fine, coarse, nodes, q):
    est = np.abs(fine - coarse)
    if np.ndim(value) == 0:
        value, est = float(value), float(est)
    res = TransformResult(value=value, est_error=est, nodes_used=nodes)
    return res, q.accepts(value, est)


def _k_once(w: BaseSolution, p: TricomiParams, x, t: float, q: QuadratureSpec, nodes: int):
    rule = rule_for(q, nodes)
    pt, pb, spread = _distances(p, t, rule.x, rule.xc)
    b = t * rule.x
    s, sc = rule.x, rule.xc
    r = spread[:, None] * s[None, :]
    gap = spread[:, None] * sc[None, :]
    kern = kernel_values(p, pt, pb[:, None], r, gap=gap)
    jac = t * spread[:, None] * kern
    xe = _spatial_axis(w.dim, x, 2)
    vals = np.asarray(w.eval(xe, r, b[:, None]), dtype=float) * jac
    fine = np.einsum("...ij,i,j->...", vals, rule.w, rule.w)
    coarse = np.einsum("...ij,i,j->...", vals, rule.coarse, rule.coarse)
    return fine, coarse, len(rule.x) ** 2


def apply_K(w: BaseSolution, p: TricomiParams, x, t: float,
            q: QuadratureSpec | None = None) -> TransformResult:
    """``c * int_0^t db int_0^{phi(t)-phi(b)} alpha F(gamma, gamma; 1; beta) w(x, r; b) dr``.

    Both integrals use tanh-sinh rules (the outer one through ``b = t s``),
    whose double-exponential clustering absorbs the algebraic endpoint
    behaviour at ``b = 0``, ``b = t`` and ``r = phi(t) - phi(b)``.  The
    error estimate is the difference to the embedded half-resolution rule.
    With ``scheme="adaptive"`` the node count is doubled until that estimate
    meets the tolerance.

    Raises :class:`ToleranceNotMet` (carrying the best estimate) when the
    tolerance cannot be certified.
    """
    q = q or DEFAULT_K_RULE
    if p.ell <= -2.0:
        raise ParameterError("ell must exceed -2")
    t = float(t)
    if t < 0.0:
        raise ParameterError("t must be nonnegative")
    if t == 0.0:
        zero = np.zeros(_leading_shape(w.dim, x))
        return TransformResult(value=float(zero) if zero.ndim == 0 else zero,
                               est_error=0.0 if zero.ndim == 0 else zero.copy(), nodes_used=0)
    if q.scheme == "gauss_jacobi":
        raise ParameterError("the K transform has no Jacobi weight; use tanh_sinh")

    nodes = q.nodes
    while True:
        fine, coarse, used = _k_once(w, p, x, t, q, nodes)
        res, ok = _finish(fine, fine, coarse, used, q)
        if ok:
            return res
        if q.scheme != "adaptive" or 2 * nodes - 1 > q.max_nodes:
            raise ToleranceNotMet(
                f"K transform estimate {np.max(res.est_error):.3g} exceeds tolerance",
                value=res.value, est_error=res.est_error)
        nodes = 2 * nodes - 1


def source_residual_term(h: Callable, p: TricomiParams, x, t: float,
                         q: QuadratureSpec | None = None) -> TransformResult:
    """Extra forcing produced by ``apply_K`` when ``w_r(x, 0; b) = h(x, b)``:

    ``c t^ell int_0^t (phi(t)+phi(b))^(-2 gamma) F(gamma, gamma; 1; z) h(x, b) db``
    with ``z = ((phi(t) - phi(b)) / (phi(t) + phi(b)))**2``.
    """
    q = q or DEFAULT_K_RULE
    t = float(t)
    if t <= 0.0:
        raise ParameterError("t must be positive")
    nodes = q.nodes
    while True:
        rule = rule_for(q, nodes)
        pt, pb, spread = _distances(p, t, rule.x, rule.xc)
        plus = pt + pb
        z = (spread / plus) ** 2
        omz = 4.0 * pt * pb / plus ** 2
        if p.gamma == 0.0:
            kern = np.ones_like(z)
        else:
            kern = p.c * plus ** (-2.0 * p.gamma) * hyp2f1(p.gamma, p.gamma, 1.0, z, one_minus_z=omz)
        b = t * rule.x
        xe = np.asarray(x, dtype=float)[..., None]
        vals = np.asarray(h(xe, b), dtype=float) * kern * t
        scale = t ** p.ell
        fine = scale * (vals @ rule.w)
        coarse = scale * (vals @ rule.coarse)
        res, ok = _finish(fine, fine, coarse, len(rule.x), q)
        if ok:
            return res
        if q.scheme != "adaptive" or 2 * nodes - 1 > q.max_nodes:
            raise ToleranceNotMet("residual-term quadrature did not converge",
                                  value=res.value, est_error=res.est_error)
        nodes = 2 * nodes - 1


def with_odd_trace(w: BaseSolution, h: Callable) -> BaseSolution:
    """``w + r h(x, b)``.

    This is again a base solution only when ``A h = 0``, e.g. for ``h``
    independent of x; its first trace is ``h`` instead of zero.
    """
    return BaseSolution(
        eval=lambda x, r, b: w.eval(x, r, b) + np.asarray(r) * h(x, b),
        trace0=w.trace0,
        trace1=lambda x, b: w.trace1(x, b) + h(x, b),
        dim=w.dim,
    )


def _as_evaluator(v) -> Callable:
    if isinstance(v, BaseSolution):
        return lambda x, tau: v.eval(x, tau, 0.0)
    return v


def _k0_constant(p: TricomiParams) -> float:
    g = p.gamma
    return 2.0 ** (2.0 - 2.0 * g) * gamma_fn(2.0 * g) / gamma_fn(g) ** 2


def _k1_constant(p: TricomiParams) -> float:
    # 2^(2g) Gamma(2-2g) / Gamma(1-g)^2 after the duplication formula; the
    # log-gamma ratio avoids overflow for strongly negative gamma
    g = p.gamma
    return 2.0 * math.exp(math.lgamma(1.5 - g) - math.lgamma(1.0 - g)) / math.sqrt(math.pi)


def _jacobi_average(v, p, x, t, exponent, q: QuadratureSpec):
    # int_0^1 v(x, phi(t) s) (1 - s^2)^exponent ds, with (1 - s)^exponent in
    # the Jacobi weight and (1 + s)^exponent left in the integrand
    if q.scheme not in ("gauss_jacobi", "adaptive"):
        raise ParameterError("K0/K1 use Gauss-Jacobi rules")
    s, wts = gauss_jacobi_rule(q.nodes, exponent)
    tau = phi(p, t) * s
    xe = _spatial_axis(getattr(v, "dim", 1), x, 1)
    vals = np.asarray(_as_evaluator(v)(xe, tau), dtype=float)
    out = vals @ (wts * (1.0 + s) ** exponent)
    return float(out) if np.ndim(out) == 0 else out


def apply_K0(v, p: TricomiParams, x, t: float, q: QuadratureSpec | None = None):
    """Solution of the homogeneous equation with ``u(x, 0) = v(x, 0)`` and
    ``u_t(x, 0) = 0``, for ``gamma > 0``.

    ``v`` is either a callable ``v(x, tau)`` or a :class:`BaseSolution`
    (evaluated at ``b = 0``).
    """
    if not p.gamma > 0.0:
        raise ParameterError("K0 requires gamma > 0 (ell > 0)")
    q = q or DEFAULT_JACOBI
    return _k0_constant(p) * _jacobi_average(v, p, x, t, p.gamma - 1.0, q)


def apply_K1(v, p: TricomiParams, x, t: float, q: QuadratureSpec | None = None):
    """Solution of the homogeneous equation with ``u(x, 0) = 0`` and
    ``u_t(x, 0) = v(x, 0)``, for ``gamma < 1``."""
    if not p.gamma < 1.0:
        raise ParameterError("K1 requires gamma < 1")
    q = q or DEFAULT_JACOBI
    return float(t) * _k1_constant(p) * _jacobi_average(v, p, x, t, -p.gamma, q)


def solve_cauchy(v0, v1, p: TricomiParams, x, t: float, q: QuadratureSpec | None = None):
    """``K0 v0 + K1 v1``: the solution with data ``(v0(x, 0), v1(x, 0))``."""
    if not p.ell > 0.0:
        raise ParameterError("the Cauchy solver needs ell > 0")
    return apply_K0(v0, p, x, t, q) + apply_K1(v1, p, x, t, q)
