"""Hyperbolic map between the region S and the unit square.

    x = sinh(u) / cosh(v),    y = sinh(v) / cosh(u)

S is bounded by the axes, the curve ``v = f(u) = asinh(cosh u)`` above the
diagonal and ``v = g(u) = acosh(sinh u)`` below it; g starts on the u-axis at
``alpha = asinh(1)``. Also here: the pi/4 rotation ``u = (X-Y)/sqrt2,
v = (X+Y)/sqrt2`` and the image ``Y = h(X)`` of the curve f under it.

Curve helpers accept scalars or numpy arrays; the point maps are scalar.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .special_functions import const_alpha

ALPHA = const_alpha()
SQRT2 = math.sqrt(2.0)

# e^{-2u} at u = alpha, and the other root of q^2 - 6q + 1
_Q1 = 3.0 - 2.0 * SQRT2
_Q2 = 3.0 + 2.0 * SQRT2

ACOSH_CLAMP = 1e-14
REGION_TOL = 1e-12
# a few ulps of alpha
ALPHA_SLACK = 1e-15


class SquarePoint(NamedTuple):
    x: float
    y: float


class MapPoint(NamedTuple):
    u: float
    v: float


class RotatedPoint(NamedTuple):
    X: float
    Y: float


def acosh(t: float, excess: float | None = None) -> float:
    """ln(t + sqrt(t^2 - 1)) for t >= 1.

    ``excess`` may carry t^2 - 1 computed by the caller in a cancellation-free
    way. Arguments within ``ACOSH_CLAMP`` below 1 are treated as 1.
    """
    if excess is None:
        if t < 1.0 - ACOSH_CLAMP:
            raise DomainError(f"acosh needs t >= 1, got {t!r}")
        excess = max(t * t - 1.0, 0.0)
        t = max(t, 1.0)
    s = math.sqrt(excess)
    # t + s = 1 + (t - 1) + s with t - 1 = excess / (t + 1)
    return math.log1p(excess / (t + 1.0) + s)


def f_minus_u(u):
    """asinh(cosh u) - u without cancellation; decays like 2 e^{-2u}."""
    u = np.abs(np.asarray(u, dtype=np.float64))
    q = np.exp(-2.0 * u)
    e = 1.0 + 6.0 * q + q * q
    out = np.log1p(0.5 * q + (6.0 * q + q * q) / (2.0 * (1.0 + np.sqrt(e))))
    return out[()] if out.ndim == 0 else out


def u_minus_g(u):
    """u - acosh(sinh u) for u >= alpha without cancellation.

    1 - 6q + q^2 with q = e^{-2u} is factored as (q1 - q)(q2 - q), and
    q1 - q = q1 * (1 - e^{-2(u - alpha)}) keeps digits near u = alpha.
    """
    u = np.asarray(u, dtype=np.float64)
    delta = u - ALPHA
    if np.any(delta < -ALPHA_SLACK) or np.any(np.isnan(u)):
        raise DomainError("u_minus_g needs u >= alpha")
    # u a rounding error below alpha (e.g. curve_f(0)) counts as alpha
    delta = np.maximum(delta, 0.0)
    u = np.maximum(u, ALPHA)
    q = np.exp(-2.0 * u)
    disc = _Q1 * -np.expm1(-2.0 * delta) * (_Q2 - q)
    arg = -0.5 * q - (6.0 * q - q * q) / (2.0 * (1.0 + np.sqrt(disc)))
    out = -np.log1p(arg)
    return out[()] if out.ndim == 0 else out


def curve_f(u):
    """Upper boundary of S: v = asinh(cosh u)."""
    return np.abs(u) + f_minus_u(u)


def curve_g(u):
    """Lower boundary of S: v = acosh(sinh u), defined for u >= alpha."""
    u_arr = np.asarray(u, dtype=np.float64)
    if np.any(u_arr < ALPHA - ALPHA_SLACK) or np.any(np.isnan(u_arr)):
        raise DomainError(f"curve_g needs u >= alpha = {ALPHA!r}")
    out = np.where(u_arr <= ALPHA, 0.0, u_arr - u_minus_g(u_arr))
    return out[()] if out.ndim == 0 else out


def log_tanh(z):
    """ln(tanh z) for z > 0, accurate both near 0 and for large z."""
    z = np.asarray(z, dtype=np.float64)
    q = np.exp(-2.0 * z)
    small = z < 0.35
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log(-np.expm1(-2.0 * z)) - np.log1p(q)
        far = np.log1p(-q) - np.log1p(q)
    out = np.where(small, near, far)
    return out[()] if out.ndim == 0 else out


def in_region(p: MapPoint, tol: float = REGION_TOL) -> bool:
    """Closed-region test for S with a tolerance band around the boundary."""
    u, v = float(p[0]), float(p[1])
    if not (math.isfinite(u) and math.isfinite(v)):
        return False
    if u < -tol or v < -tol:
        return False
    u0, v0 = max(u, 0.0), max(v, 0.0)
    if v0 > float(curve_f(u0)) + tol:
        return False
    if u0 > ALPHA and v0 < float(curve_g(u0)) - tol:
        return False
    return True


def forward(p: MapPoint) -> SquarePoint:
    """Map (u, v) in S to (sinh u / cosh v, sinh v / cosh u)."""
    if not in_region(p):
        raise DomainError(f"point {tuple(p)!r} is outside the region S")
    u, v = max(float(p[0]), 0.0), max(float(p[1]), 0.0)
    # sinh(u)/cosh(v) = e^{u-v} (1 - e^{-2u}) / (1 + e^{-2v}); no overflow for large u, v
    x = math.exp(u - v) * -math.expm1(-2.0 * u) / (1.0 + math.exp(-2.0 * v))
    y = math.exp(v - u) * -math.expm1(-2.0 * v) / (1.0 + math.exp(-2.0 * u))
    return SquarePoint(x, y)


def inverse(q: SquarePoint) -> MapPoint:
    """Map (x, y) in the unit square, minus the corner (1, 1), back to S.

    u = acosh sqrt((1 + x^2)/(1 - x^2 y^2)), v likewise with x and y swapped.
    """
    x, y = float(q[0]), float(q[1])
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise DomainError(f"point {(x, y)!r} is outside the unit square")
    if x == 1.0 and y == 1.0:
        raise DomainError("the map is singular at the corner (1, 1)")
    xy = x * y
    den = (1.0 - xy) * (1.0 + xy)
    # t^2 - 1 = x^2 (1 + y^2) / (1 - x^2 y^2), free of cancellation
    ex_u = x * x * (1.0 + y * y) / den
    ex_v = y * y * (1.0 + x * x) / den
    u = acosh(math.sqrt(1.0 + ex_u), ex_u)
    v = acosh(math.sqrt(1.0 + ex_v), ex_v)
    return MapPoint(u, v)


def jacobian(p: MapPoint) -> float:
    """Determinant of d(x, y)/d(u, v): 1 - tanh^2(u) tanh^2(v)."""
    tt = math.tanh(p[0]) * math.tanh(p[1])
    return (1.0 - tt) * (1.0 + tt)


def rotate(p: RotatedPoint) -> MapPoint:
    """Rotation by pi/4: u = (X - Y)/sqrt2, v = (X + Y)/sqrt2."""
    X, Y = float(p[0]), float(p[1])
    return MapPoint((X - Y) / SQRT2, (X + Y) / SQRT2)


def h_curve(X):
    """Image of v = f(u) after rotation: Y = -(sqrt2/2) ln tanh(X/sqrt2), X > 0."""
    X_arr = np.asarray(X, dtype=np.float64)
    if np.any(~(X_arr > 0.0)):
        raise DomainError("h_curve needs X > 0")
    out = -(SQRT2 / 2.0) * log_tanh(X_arr / SQRT2)
    return out[()] if out.ndim == 0 else out


def region_rows(u_max: float, n: int) -> list[tuple[float, float, float | None]]:
    """Boundary samples (u, f(u), g(u)) on a uniform grid; g is None for u < alpha."""
    if not (math.isfinite(u_max) and u_max > 0.0):
        raise DomainError(f"u_max must be positive and finite, got {u_max!r}")
    if n < 2:
        raise DomainError(f"need at least 2 grid points, got {n!r}")
    rows = []
    for u in np.linspace(0.0, u_max, n):
        u = float(u)
        g = float(curve_g(u)) if u >= ALPHA else None
        rows.append((u, float(curve_f(u)), g))
    return rows


def region_interior(u_max: float, n: int, m: int = 3) -> list[tuple[float, float, float, float]]:
    """Interior points of S on the same u-grid with their unit-square images.

    For each grid abscissa ``m`` points are spaced evenly strictly between the
    lower boundary (0 or g(u)) and f(u). Rows are (u, v, x, y).
    """
    out = []
    for u, f, g in region_rows(u_max, n):
        if u == 0.0:
            continue
        lo = 0.0 if g is None else g
        for k in range(1, m + 1):
            v = lo + (f - lo) * k / (m + 1)
            x, y = forward(MapPoint(u, v))
            out.append((u, v, x, y))
    return out
