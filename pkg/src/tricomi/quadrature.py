"""Quadrature rules on [0, 1] used by the transforms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import ParameterError

SCHEMES = ("gauss_legendre", "gauss_jacobi", "tanh_sinh", "adaptive")

# tanh-sinh abscissae are generated on |tau| <= _TS_SPAN; the outermost node
# sits about 1e-37 from the endpoint
_TS_SPAN = 4.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls a quadrature.

    ``nodes`` is the node count per dimension (rounded up to an odd count for
    tanh-sinh).  ``endpoint_exponent`` is the Jacobi weight exponent at
    ``s = 1`` when a caller wants to override the operator's own choice.
    """

    scheme: str = "tanh_sinh"
    nodes: int = 97
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    endpoint_exponent: float | None = None
    max_nodes: int = 1537

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ParameterError(f"unknown quadrature scheme {self.scheme!r}")
        if self.nodes < 2:
            raise ParameterError("need at least two quadrature nodes")
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ParameterError("tolerances must be positive")

    def accepts(self, value, est_error) -> bool:
        return bool(np.all(est_error <= np.maximum(self.abs_tol, self.rel_tol * np.abs(value))))


@dataclass(frozen=True)
class Rule01:
    """Nodes ``x``, complements ``1 - x`` and weights on [0, 1].

    ``coarse`` holds the weights of the embedded half-resolution rule (zero
    on nodes it does not use), so a single set of integrand values gives both
    an estimate and an error indicator.
    """

    x: np.ndarray
    xc: np.ndarray
    w: np.ndarray
    coarse: np.ndarray


@lru_cache(maxsize=64)
def tanh_sinh_rule(nodes: int) -> Rule01:
    half = max(2, -(-(nodes - 1) // 2))
    if half % 2:
        half += 1
    h = _TS_SPAN / half
    tau = h * np.arange(-half, half + 1)
    u = 0.5 * np.pi * np.sinh(tau)
    x = 1.0 / (1.0 + np.exp(-2.0 * u))
    xc = 1.0 / (1.0 + np.exp(2.0 * u))
    w = h * 0.5 * np.pi * np.cosh(tau) * x * xc * 2.0
    coarse = np.zeros_like(w)
    coarse[::2] = 2.0 * w[::2]
    for arr in (x, xc, w, coarse):
        arr.setflags(write=False)
    return Rule01(x, xc, w, coarse)


@lru_cache(maxsize=64)
def gauss_legendre_rule(nodes: int) -> Rule01:
    y, wy = np.polynomial.legendre.leggauss(nodes)
    x = 0.5 * (1.0 + y)
    xc = 0.5 * (1.0 - y)
    w = 0.5 * wy
    m = max(1, nodes // 2)
    yc, wyc = np.polynomial.legendre.leggauss(m)
    # the half rule is not embedded, so its nodes are appended with zero
    # fine weight
    x = np.concatenate([x, 0.5 * (1.0 + yc)])
    xc = np.concatenate([xc, 0.5 * (1.0 - yc)])
    coarse = np.concatenate([np.zeros(nodes), 0.5 * wyc])
    w = np.concatenate([w, np.zeros(m)])
    for arr in (x, xc, w, coarse):
        arr.setflags(write=False)
    return Rule01(x, xc, w, coarse)


@lru_cache(maxsize=64)
def gauss_jacobi_rule(nodes: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes ``s`` and weights for ``int_0^1 g(s) (1 - s)^exponent ds``."""
    if exponent <= -1.0:
        raise ParameterError("Jacobi exponent must exceed -1")
    y, wy = roots_jacobi(nodes, exponent, 0.0)
    s = 0.5 * (1.0 + y)
    w = wy * 2.0 ** (-exponent - 1.0)
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


def rule_for(q: QuadratureSpec, nodes: int | None = None) -> Rule01:
    n = q.nodes if nodes is None else nodes
    if q.scheme in ("tanh_sinh", "adaptive"):
        return tanh_sinh_rule(n)
    if q.scheme == "gauss_legendre":
        return gauss_legendre_rule(n)
    raise ParameterError(f"scheme {q.scheme!r} is not a plain rule on [0, 1]")
