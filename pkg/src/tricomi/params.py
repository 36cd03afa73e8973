"""Exponent-derived constants and the distance function."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError
from .specfun import gamma_fn


@dataclass(frozen=True)
class TricomiParams:
    """Constants attached to the exponent ``ell`` of ``t**ell``.

    ``a_coef`` is only defined for ``gamma > 0`` and ``b_coef`` only for
    ``gamma < 1``; outside those ranges they are ``None``.
    """

    ell: float
    gamma: float
    c: float
    a_coef: Optional[float]
    b_coef: Optional[float]

    @property
    def speed_power(self) -> float:
        """Exponent of ``phi``: ``(ell + 2) / 2``."""
        return (self.ell + 2.0) / 2.0


def make_params(ell: float) -> TricomiParams:
    ell = float(ell)
    if not math.isfinite(ell):
        raise ParameterError(f"ell must be finite, got {ell}")
    if ell == -2.0:
        raise ParameterError("ell = -2 is excluded: gamma is undefined there")
    gamma = ell / (2.0 * (ell + 2.0))
    # ell = -4/3 is not representable; snap so the polynomial kernels are
    # recognised as such
    if abs(gamma - round(gamma)) < 1e-12:
        gamma = float(round(gamma))
    base = (ell + 2.0) / 4.0
    if base <= 0.0:
        raise ParameterError(f"ell = {ell} < -2 has no real distance function")
    c = base ** (-ell / (ell + 2.0))

    a_coef = None
    if gamma > 0.0:
        a_coef = (2.0 ** (1.0 - 2.0 * gamma) * ell * gamma_fn(2.0 * gamma)
                  / (2.0 * gamma * gamma_fn(gamma) ** 2))
    b_coef = None
    if gamma < 1.0:
        # (ell+2) 2^(2g-1) Gamma(2-2g) / Gamma(1-g)^2 reduced by the duplication
        # formula; the log-gamma ratio stays finite as ell -> -2 (gamma -> -inf)
        ratio = math.exp(math.lgamma(1.5 - gamma) - math.lgamma(1.0 - gamma))
        b_coef = (ell + 2.0) * ratio / math.sqrt(math.pi)
    return TricomiParams(ell=ell, gamma=gamma, c=c, a_coef=a_coef, b_coef=b_coef)


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(~np.isfinite(t)):
        raise ParameterError("time must be finite and nonnegative")
    return t


def phi(p: TricomiParams, t):
    """Distance function ``2/(ell+2) * t**((ell+2)/2)``; accepts arrays."""
    t = _check_time(t)
    out = (2.0 / (p.ell + 2.0)) * t ** p.speed_power
    return float(out) if out.ndim == 0 else out


def phi_inverse(p: TricomiParams, tau):
    """Inverse of :func:`phi` on ``tau >= 0``."""
    tau = _check_time(tau)
    out = (0.5 * (p.ell + 2.0) * tau) ** (1.0 / p.speed_power)
    return float(out) if out.ndim == 0 else out


def phi_derivatives(p: TricomiParams, t):
    """Return ``(phi', phi'')`` at ``t > 0``.

    At ``t = 0`` the second derivative is unbounded for ``ell < 2`` (and the
    first for ``ell < 0``); that case raises :class:`ParameterError`.
    """
    t = _check_time(t)
    if np.any(t == 0.0) and p.ell < 2.0 and p.ell != 0.0:
        raise ParameterError(f"phi'' is singular at t = 0 for ell = {p.ell}")
    phi1 = t ** (0.5 * p.ell)
    phi2 = 0.5 * p.ell * t ** (0.5 * p.ell - 1.0) if p.ell != 0.0 else np.zeros_like(t)
    if phi1.ndim == 0:
        return float(phi1), float(phi2)
    return phi1, phi2
