"""Gamma function and the Gauss hypergeometric function 2F1.

Only real parameters and real arguments ``z < 1`` are supported.  The
hypergeometric evaluation switches from the Maclaurin series to the
``z -> 1 - z`` connection formula at ``z = 0.7``; callers that already know
``1 - z`` accurately (the kernel does) can pass it through ``one_minus_z``
to avoid the cancellation in forming it.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, PoleError, UnsupportedParameters

# Lanczos approximation, g = 607/128 with 15 terms (Godfrey's coefficients).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

SWITCH_Z = 0.7
MAX_TERMS = 20000
_INTEGER_GAP = 1e-9


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and float(x).is_integer()


def _sinpi(x: float) -> float:
    # reduce to [-1/2, 1/2] first so pi*y keeps full relative accuracy
    y = math.fmod(x, 2.0)
    if y > 1.0:
        y -= 2.0
    elif y < -1.0:
        y += 2.0
    if y > 0.5:
        y = 1.0 - y
    elif y < -0.5:
        y = -1.0 - y
    if y == 0.0:
        return 0.0
    return math.sin(math.pi * y)


def _gamma_positive(x: float) -> float:
    # Gamma(x) for x >= 0.5 via Gamma(z + 1) with z = x - 1
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    # split the power so moderately large arguments do not overflow early
    half = t ** (0.5 * (z + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


def gamma_fn(x: float) -> float:
    """Euler gamma function for real ``x``.

    Raises :class:`PoleError` at nonpositive integers.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (_sinpi(x) * _gamma_positive(1.0 - x))
    return _gamma_positive(x)


def rgamma(x: float) -> float:
    """Reciprocal gamma ``1/Gamma(x)``, equal to zero at the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    if x < 0.5:
        return _sinpi(x) * _gamma_positive(1.0 - x) / math.pi
    return 1.0 / _gamma_positive(x)


def _series(a, b, c, z, max_terms=MAX_TERMS):
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    eps = np.finfo(float).eps
    for n in range(max_terms):
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        term = term * ratio * z
        total = total + term
        # stop only once the terms are shrinking, so a transient rise in the
        # early terms is not mistaken for convergence
        if abs(ratio) * np.max(np.abs(z), initial=0.0) < 1.0:
            if np.all(np.abs(term) <= 0.25 * eps * np.abs(total)):
                return total
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; z) series did not converge in {max_terms} terms "
        f"(max |z| = {np.max(np.abs(z), initial=0.0):.6g})")


def _terminating(a, b, c, z):
    # a or b is a nonpositive integer: finite polynomial, any real z
    m = int(round(-a)) if _is_nonpositive_integer(a) else int(round(-b))
    if _is_nonpositive_integer(a) and _is_nonpositive_integer(b):
        m = min(int(round(-a)), int(round(-b)))
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(m):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * z
        total = total + term
    return total


def _connection(a, b, c, z, omz):
    s = c - a - b
    g_c = gamma_fn(c)
    coef1 = g_c * gamma_fn(s) * rgamma(c - a) * rgamma(c - b)
    coef2 = g_c * gamma_fn(-s) * rgamma(a) * rgamma(b)
    out = np.zeros_like(omz)
    if coef1 != 0.0:
        out = out + coef1 * _series(a, b, 1.0 - s, omz)
    if coef2 != 0.0:
        out = out + coef2 * omz ** s * _series(c - a, c - b, 1.0 + s, omz)
    return out


def _value(a, b, c, z, omz):
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _terminating(a, b, c, z)
    # z itself may round to 1 when the caller supplied an accurate 1 - z > 0
    if np.any(z > 1.0) or np.any(omz <= 0.0):
        raise UnsupportedParameters("2F1 is only implemented for z < 1 "
                                    "unless the series terminates")
    if np.any(z <= -1.0):
        raise UnsupportedParameters("2F1 is only implemented for z > -1")
    out = np.empty_like(z)
    near = z >= SWITCH_Z
    if np.any(~near):
        out[~near] = _series(a, b, c, z[~near])
    if np.any(near):
        s = c - a - b
        if abs(s - round(s)) < _INTEGER_GAP:
            # the connection coefficients have poles here; the direct series
            # still converges for z < 1, just slowly
            try:
                out[near] = _series(a, b, c, z[near])
            except ConvergenceError as exc:
                raise UnsupportedParameters(
                    f"c - a - b = {s} is an integer and z is too close to 1 "
                    "for the direct series") from exc
        else:
            out[near] = _connection(a, b, c, z[near], omz[near])
    return out


def hyp2f1(a: float, b: float, c: float, z, derivatives: int = 0, one_minus_z=None):
    """Gauss hypergeometric function ``F(a, b; c; z)`` for real ``z < 1``.

    Parameters
    ----------
    a, b, c : float
        Real parameters; ``c`` must not be a nonpositive integer.
    z : float or array_like
        Argument(s), vectorised.
    derivatives : int
        0, 1 or 2.  With ``derivatives > 0`` a tuple ``(F, F', ...)`` is
        returned, computed from the parameter-shift identity
        ``F'(a, b; c; z) = a b / c * F(a + 1, b + 1; c + 1; z)``.
    one_minus_z : float or array_like, optional
        Accurate value of ``1 - z`` used by the connection branch.

    Returns
    -------
    float or ndarray, or a tuple of them
    """
    a, b, c = float(a), float(b), float(c)
    if _is_nonpositive_integer(c):
        raise PoleError(f"c = {c} is a nonpositive integer")
    if derivatives not in (0, 1, 2):
        raise ValueError("derivatives must be 0, 1 or 2")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if one_minus_z is None:
        omz = 1.0 - z
    else:
        omz = np.broadcast_to(np.asarray(one_minus_z, dtype=float), z.shape).copy()

    values = [_value(a, b, c, z, omz)]
    factor = 1.0
    for k in range(derivatives):
        factor *= (a + k) * (b + k) / (c + k)
        if factor == 0.0:
            values.append(np.zeros_like(z))
        else:
            values.append(factor * _value(a + k + 1, b + k + 1, c + k + 1, z, omz))

    if scalar:
        values = [float(v[0]) for v in values]
    return values[0] if derivatives == 0 else tuple(values)


def hyp2f1_series(a: float, b: float, c: float, z):
    """Maclaurin series only, for any ``|z| < 1`` (slow near 1)."""
    scalar = np.ndim(z) == 0
    out = _series(float(a), float(b), float(c), np.atleast_1d(np.asarray(z, dtype=float)))
    return float(out[0]) if scalar else out


def hyp2f1_connection(a: float, b: float, c: float, z, one_minus_z=None):
    """Connection-formula branch only, for ``0 <= z < 1``."""
    a, b, c = float(a), float(b), float(c)
    s = c - a - b
    if abs(s - round(s)) < _INTEGER_GAP:
        raise UnsupportedParameters(f"c - a - b = {s} is an integer")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    omz = 1.0 - z if one_minus_z is None else np.atleast_1d(np.asarray(one_minus_z, dtype=float))
    out = _connection(a, b, c, z, omz)
    return float(out[0]) if scalar else out


def hyp2f1_ode_residual(gamma: float, z):
    """Residual of ``z(1-z)F'' + (1 - (2 gamma + 1) z) F' - gamma^2 F`` for
    ``F = F(gamma, gamma; 1; z)``."""
    f, fz, fzz = hyp2f1(gamma, gamma, 1.0, z, derivatives=2)
    z = np.asarray(z, dtype=float)
    out = z * (1.0 - z) * fzz + (1.0 - (2.0 * gamma + 1.0) * z) * fz - gamma * gamma * f
    return float(out) if out.ndim == 0 else out
