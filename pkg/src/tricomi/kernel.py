"""The hypergeometric kernel E(r, t; b) and its closed-form derivatives.

Writing ``P = phi(t) + phi(b)``, ``M = phi(t) - phi(b)`` and
``D = P**2 - r**2``, the kernel is

    E = c * D**(-gamma) * F(gamma, gamma; 1; beta),   beta = (M**2 - r**2) / D,

with ``alpha = D**(-gamma)``.  Fractional powers of ``alpha`` that appear in
the derivative formulas are always evaluated as integer shifts of the
exponent of ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularKernelError, StencilError
from .params import TricomiParams, phi, phi_derivatives
from .specfun import hyp2f1


@dataclass(frozen=True)
class KernelPoint:
    t: float
    b: float
    r: float

    def __post_init__(self):
        if not (0.0 < self.b < self.t):
            raise ParameterError(f"need 0 < b < t, got b={self.b}, t={self.t}")
        if self.r < 0.0:
            raise ParameterError(f"need r >= 0, got r={self.r}")


@dataclass(frozen=True)
class AlphaBetaDerivatives:
    alpha_t: float
    alpha_tt: float
    beta_t: float
    beta_tt: float
    alpha_r: float
    alpha_rr: float
    beta_r: float
    beta_rr: float


@dataclass(frozen=True)
class Lemma23Coefficients:
    I: float
    J: float
    Y: float
    G: float
    z: float


@dataclass(frozen=True)
class KernelResidual:
    residual: float
    e_tt: float
    e_rr: float
    step: float

    @property
    def bound(self) -> float:
        return abs(self.e_tt) + abs(self.e_rr) + 1.0


def _parts(p: TricomiParams, t, b, r):
    pt, pb = phi(p, t), phi(p, b)
    plus = pt + pb
    d = (plus - r) * (plus + r)
    if np.any(plus - r <= 0.0):
        raise SingularKernelError(
            "kernel requires r < phi(t) + phi(b); the base of alpha is not positive")
    return pt, pb, plus, d


def kernel_values(p: TricomiParams, phi_t, phi_b, r, gap=None):
    """Vectorised kernel from precomputed distances.

    ``gap`` may carry an accurate ``phi_t - phi_b - r`` (>= 0); it is used to
    form ``1 - beta = 4 phi_t phi_b / D`` and ``D`` without cancellation.
    """
    phi_t = np.asarray(phi_t, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    r = np.asarray(r, dtype=float)
    if gap is None:
        lower = phi_t + phi_b - r
        upper_num = phi_t - phi_b - r
    else:
        gap = np.asarray(gap, dtype=float)
        lower = 2.0 * phi_b + gap
        upper_num = gap
    if np.any(lower <= 0.0):
        raise SingularKernelError("kernel requires r < phi(t) + phi(b)")
    d = lower * (phi_t + phi_b + r)
    num = upper_num * (phi_t - phi_b + r)
    beta = num / d
    omz = 4.0 * phi_t * phi_b / d
    if np.any(omz <= 0.0) and p.gamma not in (0.0, -1.0, -2.0):
        raise SingularKernelError("beta >= 1 encountered")
    if p.gamma == 0.0:
        return np.ones(np.broadcast(phi_t, phi_b, r).shape)
    return p.c * d ** (-p.gamma) * hyp2f1(p.gamma, p.gamma, 1.0, beta, one_minus_z=omz)


def alpha_beta(p: TricomiParams, k: KernelPoint):
    """Return ``(alpha, beta)`` at a kernel point."""
    pt, pb, plus, d = _parts(p, k.t, k.b, k.r)
    minus = pt - pb
    alpha = d ** (-p.gamma)
    beta = (minus - k.r) * (minus + k.r) / d
    return float(alpha), float(beta)


def kernel_E(p: TricomiParams, k: KernelPoint) -> float:
    """Kernel value ``c * alpha * F(gamma, gamma; 1; beta)``."""
    if p.gamma == 0.0:
        _parts(p, k.t, k.b, k.r)
        return 1.0
    pt, pb = phi(p, k.t), phi(p, k.b)
    return float(kernel_values(p, pt, pb, k.r))


def lemma22_derivatives(p: TricomiParams, k: KernelPoint) -> AlphaBetaDerivatives:
    """Closed-form first and second t- and r-derivatives of alpha and beta."""
    g = p.gamma
    t, b, r = k.t, k.b, k.r
    pt, pb, plus, d = _parts(p, t, b, r)
    phi1, phi2 = phi_derivatives(p, t)
    d_g1 = d ** (-g - 1.0)
    d_g2 = d ** (-g - 2.0)
    inv_d2 = 1.0 / (d * d)
    q = pt * pt - pb * pb + r * r

    alpha_t = -2.0 * g * phi1 * plus * d_g1
    alpha_tt = (-2.0 * g * phi2 * plus * d_g1
                - 2.0 * g * phi1 ** 2 * d_g1
                + 4.0 * g * (g + 1.0) * phi1 ** 2 * plus ** 2 * d_g2)
    beta_t = 4.0 * inv_d2 * phi1 * pb * q
    beta_tt = 4.0 * pb * inv_d2 * (phi2 * q - 4.0 * phi1 ** 2 * plus * q / d
                                   + 2.0 * pt * phi1 ** 2)
    alpha_r = 2.0 * g * r * d_g1
    alpha_rr = 2.0 * g * d_g1 + 4.0 * g * (g + 1.0) * r * r * d_g2
    beta_r = -8.0 * r * pt * pb * inv_d2
    beta_rr = -8.0 * pt * pb * inv_d2 / d * (plus ** 2 + 3.0 * r * r)
    return AlphaBetaDerivatives(alpha_t, alpha_tt, beta_t, beta_tt,
                                alpha_r, alpha_rr, beta_r, beta_rr)


def beta_r_alternate(p: TricomiParams, k: KernelPoint) -> float:
    """``beta_r`` written as ``-2 r (1 - beta) / D``."""
    pt, pb, plus, d = _parts(p, k.t, k.b, k.r)
    one_minus_beta = 4.0 * pt * pb / d
    return float(-2.0 * k.r * one_minus_beta / d)


def lemma23_coefficients(p: TricomiParams, k: KernelPoint) -> Lemma23Coefficients:
    """Coefficients I, J, Y of ``F, F', F''`` in ``E_tt - t^ell E_rr`` and the
    common factor G."""
    g = p.gamma
    if g == 0.0:
        raise ParameterError("gamma = 0 gives a constant kernel; I, J, Y, G are not defined")
    der = lemma22_derivatives(p, k)
    alpha, z = alpha_beta(p, k)
    pt, pb, plus, d = _parts(p, k.t, k.b, k.r)
    _, phi2 = phi_derivatives(p, k.t)
    tl = k.t ** p.ell

    i_coef = der.alpha_tt - tl * der.alpha_rr
    j_coef = (2.0 * der.alpha_t * der.beta_t + alpha * der.beta_tt
              - tl * (2.0 * der.alpha_r * der.beta_r + alpha * der.beta_rr))
    y_coef = alpha * (der.beta_t ** 2 - tl * der.beta_r ** 2)
    g_coef = 2.0 / g * phi2 * pb * d ** (-g - 1.0)
    return Lemma23Coefficients(float(i_coef), float(j_coef), float(y_coef),
                               float(g_coef), float(z))


def kernel_pde_residual(p: TricomiParams, k: KernelPoint, h: float = 1e-3) -> KernelResidual:
    """Centred-difference ``E_tt - t^ell E_rr`` with Richardson extrapolation.

    The step is ``min(h, 1e-3, min(t - b, b) / 10)`` so the t-stencil stays
    strictly between ``b`` and ``t + 2h``, further limited to 1/40 of the
    distance to the singular set ``r = phi(t) + phi(b)`` (measured in t via
    ``phi'(t)``).  The r-stencil may dip below zero because the kernel is
    even in r.
    """
    t, b, r = k.t, k.b, k.r
    pb = phi(p, b)
    reach = phi(p, t) + pb - r
    phi1, _ = phi_derivatives(p, t)
    step = min(h, 1e-3, min(t - b, b) / 10.0, reach / (40.0 * max(1.0, phi1)))
    if step <= 0.0:
        raise StencilError("nonpositive finite-difference step")

    def e_of(tt, rr):
        pt = phi(p, tt)
        if pt + pb - abs(rr) <= 0.0:
            raise StencilError("stencil reaches the singular set r = phi(t) + phi(b)")
        return float(kernel_values(p, pt, pb, abs(rr)))

    e0 = e_of(t, r)

    def second(hh):
        e_tt = (e_of(t + hh, r) - 2.0 * e0 + e_of(t - hh, r)) / (hh * hh)
        e_rr = (e_of(t, r + hh) - 2.0 * e0 + e_of(t, r - hh)) / (hh * hh)
        return e_tt, e_rr

    tt1, rr1 = second(step)
    tt2, rr2 = second(0.5 * step)
    e_tt = (4.0 * tt2 - tt1) / 3.0
    e_rr = (4.0 * rr2 - rr1) / 3.0
    return KernelResidual(residual=e_tt - t ** p.ell * e_rr, e_tt=e_tt, e_rr=e_rr, step=step)
