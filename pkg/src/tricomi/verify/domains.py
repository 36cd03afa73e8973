"""Half-width space-time domains ``{(x, t): |x| < x0(t), 0 < t <= t_max}``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ParameterError
from ..params import TricomiParams, phi, phi_inverse


@dataclass(frozen=True)
class TimeSlabDomain:
    boundary: Callable
    t_max: float

    def half_width(self, t):
        return np.asarray(self.boundary(np.asarray(t, dtype=float)), dtype=float)

    def contains(self, x, t) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        inside_t = (t > 0.0) & (t <= self.t_max)
        tt = np.clip(t, 0.0, self.t_max)
        return inside_t & (np.abs(x) < self.half_width(tt))


def _time_samples(t_max: float, samples: int) -> np.ndarray:
    return np.linspace(0.0, t_max, samples + 1)[1:]


def is_backward_time_connected(d: TimeSlabDomain, samples: int = 400,
                               rtol: float = 1e-12) -> bool:
    """Sampled test that every nonempty slice is contained in all earlier
    slices, i.e. the half-width never grows where the slice is nonempty."""
    ts = _time_samples(d.t_max, samples)
    widths = d.half_width(ts)
    earlier_min = np.minimum.accumulate(widths)
    nonempty = widths > 0.0
    slack = rtol * np.maximum(1.0, np.abs(widths))
    return bool(np.all(earlier_min[nonempty] >= widths[nonempty] - slack[nonempty]))


def phi_image(d: TimeSlabDomain, p: TricomiParams, samples: int = 400) -> TimeSlabDomain:
    """Union over ``(x, t)`` in ``d`` of the segments ``{x} x (0, phi(t)]``.

    For a nonincreasing half-width this is the domain with half-width
    ``x0(phi^{-1}(tau))`` on ``0 < tau <= phi(t_max)``.
    """
    if not is_backward_time_connected(d, samples):
        raise ParameterError("phi-image is defined for backward time connected domains")
    return TimeSlabDomain(boundary=lambda tau: d.boundary(phi_inverse(p, tau)),
                          t_max=phi(p, d.t_max))


def phi_pullback(d: TimeSlabDomain, p: TricomiParams) -> TimeSlabDomain:
    """Domain with half-width ``x0(phi(tau))``: the inverse of :func:`phi_image`.

    For ``x0(t) = x_0 - (2/3) t^(3/2)`` and ``ell = 1`` this is
    ``x_0 - (2/3)^(5/2) tau^(9/4)``.
    """
    return TimeSlabDomain(boundary=lambda tau: d.boundary(phi(p, tau)),
                          t_max=phi_inverse(p, d.t_max))


def union(d1: TimeSlabDomain, d2: TimeSlabDomain) -> TimeSlabDomain:
    return TimeSlabDomain(boundary=lambda t: np.maximum(_masked(d1, t), _masked(d2, t)),
                          t_max=max(d1.t_max, d2.t_max))


def intersection(d1: TimeSlabDomain, d2: TimeSlabDomain) -> TimeSlabDomain:
    return TimeSlabDomain(boundary=lambda t: np.minimum(_masked(d1, t), _masked(d2, t)),
                          t_max=min(d1.t_max, d2.t_max))


def _masked(d: TimeSlabDomain, t):
    t = np.asarray(t, dtype=float)
    return np.where(t <= d.t_max, d.half_width(np.minimum(t, d.t_max)), 0.0)


def characteristic_domain(p: TricomiParams, x0: float, t_max: float | None = None) -> TimeSlabDomain:
    """``|x| < x0 - phi(t)``, the dependence domain of ``(0, phi^{-1}(x0))``."""
    t_top = phi_inverse(p, x0) if t_max is None else t_max
    return TimeSlabDomain(boundary=lambda t: x0 - phi(p, t), t_max=t_top)


def rectangle(x0: float, t_max: float) -> TimeSlabDomain:
    return TimeSlabDomain(boundary=lambda t: np.full(np.shape(t), float(x0)), t_max=t_max)


def fit_power_law(d: TimeSlabDomain, x0: float, lo: float | None = None,
                  hi: float | None = None, samples: int = 200,
                  min_drop: float = 1e-7) -> tuple[float, float]:
    """Fit ``x0 - boundary(t) = C t^q``; returns ``(q, C)``.

    Samples are geometric on ``[lo, hi]`` (``lo`` defaults to ``hi / 1000``).
    Only samples whose drop exceeds ``min_drop * |x0|`` enter the fit, since
    smaller drops are dominated by rounding in ``x0 - boundary``.
    """
    hi = d.t_max if hi is None else hi
    lo = 1e-3 * hi if lo is None else lo
    if not 0.0 < lo < hi:
        raise ParameterError(f"empty fit window [{lo}, {hi}] (time range under/overflows)")
    ts = np.geomspace(lo, hi, samples)
    drop = x0 - d.half_width(ts)
    keep = drop > min_drop * max(abs(x0), 1e-300)
    if np.count_nonzero(keep) < 8:
        raise ParameterError("too few resolvable samples for a power-law fit")
    q, logc = np.polyfit(np.log(ts[keep]), np.log(drop[keep]), 1)
    return float(q), float(np.exp(logc))
