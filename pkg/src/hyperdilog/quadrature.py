"""Tanh-sinh (double-exponential) quadrature.

One rule serves every integral in the package:

* finite intervals, endpoint singularities allowed (nodes never sit on an
  endpoint);
* half-lines ``(a, inf)`` through ``u = a - ln(1 - t)``, which turns
  ``e^{-cu}`` decay into a power of ``1 - t``;
* the unit square, as an iterated rule whose inner integrals adapt row by row,
  so a singular corner at (1, 1) is never sampled.

Each level halves the step; the estimate is accepted once two successive
levels agree to ``abs_tol``. Integrands are called with numpy arrays and must
act elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import IntegrandError

# finest levels are never trusted before this many halvings
MIN_LEVEL = 3
# t beyond which the distance to the endpoint underflows
_T_MAX = 6.5


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    max_evaluations: int = 10_000_000
    max_depth: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_evaluations < 1 or self.max_depth < 1:
            raise ValueError("max_evaluations and max_depth must be positive")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_bound: float
    evaluations: int
    converged: bool


DEFAULT_CONFIG = QuadConfig()


@lru_cache(maxsize=None)
def _level_table(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes first appearing at ``level`` on the unit interval, t > 0 side.

    Returns (d, w): d is the distance from the node to the nearer endpoint and
    w the weight without the step factor. The centre node (t = 0) is added
    separately at level 0.
    """
    h = 2.0**-level
    if level == 0:
        t = np.arange(1, int(_T_MAX) + 1, dtype=np.float64)
    else:
        k = np.arange(1, int(_T_MAX / h) // 2 + 2, dtype=np.float64)
        t = (2.0 * k - 1.0) * h
        t = t[t <= _T_MAX]
    s = np.pi * np.sinh(t)
    with np.errstate(over="ignore"):
        d = 1.0 / (1.0 + np.exp(s))
    w = np.pi * np.cosh(t) * d * (1.0 - d)
    keep = (d > 0.0) & (w > 0.0)
    d, w = d[keep], w[keep]
    d.flags.writeable = False
    w.flags.writeable = False
    return d, w


def _interval_nodes(a: float, b: float, level: int):
    """New nodes of ``level`` on (a, b).

    Returns (x, b - x, weight, distance to the nearer endpoint, side) with
    side 0 for the half next to ``a`` and 1 next to ``b``. Nodes that round
    onto an endpoint are dropped.
    """
    L = b - a
    d, w = _level_table(level)
    dist = L * d
    xl = a + dist
    xr = b - dist
    left = xl > a
    right = xr < b
    x = np.concatenate((xl[left], xr[right]))
    to_b = np.concatenate((L - dist[left], dist[right]))
    wt = np.concatenate((L * w[left], L * w[right]))
    near = np.concatenate((dist[left], dist[right]))
    side = np.concatenate((np.zeros(left.sum(), dtype=np.int8), np.ones(right.sum(), dtype=np.int8)))
    if level == 0:
        x = np.concatenate(([a + 0.5 * L], x))
        to_b = np.concatenate(([0.5 * L], to_b))
        wt = np.concatenate(([0.25 * math.pi * L], wt))
        near = np.concatenate(([0.5 * L], near))
        side = np.concatenate(([0], side)).astype(np.int8)
    return x, to_b, wt, near, side


def _outermost(near: np.ndarray, side: np.ndarray):
    """Index of the node closest to each endpoint (or -1 if that side is empty)."""
    out = []
    for s in (0, 1):
        idx = np.flatnonzero(side == s)
        out.append(int(idx[np.argmin(near[idx])]) if idx.size else -1)
    return out


def _checked(vals, shape) -> np.ndarray:
    vals = np.broadcast_to(np.asarray(vals, dtype=np.float64), shape)
    if not np.all(np.isfinite(vals)):
        raise IntegrandError("integrand returned a non-finite value at an interior node")
    return vals


def _sliver(gap, val):
    """Unresolved end pieces: a rectangle gap * |f| per side, times 4.

    Exact integrands cost ~1e-16 here. For an algebraic singularity at an
    endpoint b != 0 the rectangle undercounts (and b - x loses digits), hence
    the generous factor.
    """
    g = np.where(np.isfinite(gap), gap, 0.0)
    return 4.0 * np.sum(g * np.asarray(val), axis=0)


def _tanh_sinh(g: Callable, a: float, b: float, cfg: QuadConfig) -> QuadResult:
    """Level-doubling driver. ``g(x, b - x)`` gets both the node and its
    distance to the upper limit, so transforms can avoid forming ``b - x``.

    Besides the level difference, the error bound carries a rectangle
    estimate for the sliver between each endpoint and the closest node
    floating point can place there (see ``_sliver``).
    """
    est = prev = 0.0
    err = math.inf
    evals = 0
    edge_gap = [math.inf, math.inf]
    edge_val = [0.0, 0.0]
    for level in range(cfg.max_depth + 1):
        x, to_b, w, near, side = _interval_nodes(a, b, level)
        if level > 0 and evals + x.size > cfg.max_evaluations:
            break
        vals = _checked(g(x, to_b), x.shape)
        evals += x.size
        for s, j in enumerate(_outermost(near, side)):
            if j >= 0 and near[j] < edge_gap[s]:
                edge_gap[s], edge_val[s] = float(near[j]), abs(float(vals[j]))
        part = math.fsum(w * vals)
        est = part if level == 0 else 0.5 * est + 2.0**-level * part
        if level >= 1:
            err = abs(est - prev)
            if level >= MIN_LEVEL and err <= cfg.abs_tol:
                bound = err + float(_sliver(np.array(edge_gap), np.array(edge_val)))
                return QuadResult(est, bound, evals, bound <= cfg.abs_tol)
        prev = est
    return QuadResult(est, err + float(_sliver(np.array(edge_gap), np.array(edge_val))), evals, False)


def integrate_finite(f: Callable, a: float, b: float, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integrate ``f`` over the open interval (a, b) with a < b."""
    a, b = float(a), float(b)
    if not (a < b) or not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"need finite a < b, got a={a!r}, b={b!r}")
    return _tanh_sinh(lambda x, _to_b: f(x), a, b, cfg)


def integrate_semi_infinite(
    f: Callable,
    a: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
    cutoff: float | None = None,
) -> QuadResult:
    """Integrate ``f`` over (a, inf) for integrands decaying at least like e^{-u}.

    The substitution is ``u = a - ln(1 - s t)`` on t in (0, 1) with
    ``s = 1 - e^{-(cutoff - a)}``; the default ``cutoff=None`` gives s = 1,
    i.e. the full half-line. A finite cutoff integrates over (a, cutoff)
    with the same smooth map, which is how tail sensitivity is probed.
    """
    a = float(a)
    if not math.isfinite(a):
        raise ValueError(f"lower limit must be finite, got {a!r}")
    if cutoff is None:
        s, gap = 1.0, 0.0
    else:
        if not cutoff > a:
            raise ValueError(f"cutoff must exceed a={a!r}, got {cutoff!r}")
        s, gap = -math.expm1(-(cutoff - a)), math.exp(-(cutoff - a))

    def g(t, one_minus_t):
        rest = gap + s * one_minus_t  # 1 - s t
        with np.errstate(divide="ignore"):
            u = a - np.log(rest)
        return f(u) * (s / rest)

    return _tanh_sinh(g, 0.0, 1.0, cfg)


def _inner_rows(F: Callable, ys: np.ndarray, wy: np.ndarray, cfg: QuadConfig, budget: int):
    """Inner x-integrals over (0, 1) for a batch of outer nodes ``ys``.

    A row is done once its level difference is below ``abs_tol/16``, or once
    that difference times the row's outer weight is below ``abs_tol * 2^-14``
    (rows hugging y = 1 carry negligible weight but noisy integrands).
    Returns (values, level errors, end-sliver estimates, done mask, evaluations).
    """
    n = ys.size
    est = np.zeros(n)
    prev = np.zeros(n)
    err = np.full(n, math.inf)
    gap = np.full((2, n), math.inf)
    fedge = np.zeros((2, n))
    done = np.zeros(n, dtype=bool)
    active = np.arange(n)
    evals = 0
    row_tol = cfg.abs_tol / 16.0
    weighted_tol = cfg.abs_tol * 2.0**-14
    for level in range(cfg.max_depth + 1):
        x, _, w, near, side = _interval_nodes(0.0, 1.0, level)
        cost = x.size * active.size
        if level > 0 and evals + cost > budget:
            break
        vals = _checked(F(x[None, :], ys[active, None]), (active.size, x.size))
        evals += cost
        for s, j in enumerate(_outermost(near, side)):
            if j >= 0:
                closer = near[j] < gap[s, active]
                rows = active[closer]
                gap[s, rows] = near[j]
                fedge[s, rows] = np.abs(vals[closer, j])
        part = np.sum(vals * w, axis=1)
        if level == 0:
            est[active] = part
        else:
            est[active] = 0.5 * est[active] + 2.0**-level * part
            err[active] = np.abs(est[active] - prev[active])
            if level >= MIN_LEVEL:
                e = err[active]
                ok = (e <= row_tol) | (wy[active] * e <= weighted_tol)
                done[active[ok]] = True
                active = active[~ok]
        prev[active] = est[active]
        if active.size == 0:
            break
    return est, err, _sliver(gap, fedge), done, evals


def integrate_unit_square(F: Callable, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integrate ``F(x, y)`` over the open unit square by iterated tanh-sinh.

    The outer rule runs over y; each outer node gets its own adaptive inner
    integral over x. The error bound is the outer level difference plus the
    outer-weighted sum of the inner error estimates (level difference and
    end sliver per row) plus the outer end sliver.
    """
    est = prev = 0.0
    evals = 0
    all_w: list[np.ndarray] = []
    all_err: list[np.ndarray] = []
    edge_gap = [math.inf, math.inf]
    edge_val = [0.0, 0.0]
    all_ok = True
    bound = math.inf
    for level in range(cfg.max_depth + 1):
        y, _, wy, near, side = _interval_nodes(0.0, 1.0, level)
        budget = cfg.max_evaluations - evals
        if budget <= 0:
            break
        G, e, sliver, ok, n = _inner_rows(F, y, wy, cfg, budget)
        evals += n
        all_ok = all_ok and bool(ok.all())
        for s, j in enumerate(_outermost(near, side)):
            if j >= 0 and near[j] < edge_gap[s]:
                edge_gap[s], edge_val[s] = float(near[j]), abs(float(G[j]))
        part = math.fsum(wy * G)
        est = part if level == 0 else 0.5 * est + 2.0**-level * part
        all_w.append(wy)
        all_err.append(np.where(np.isfinite(e), e, 0.0) + sliver)
        if level >= 1:
            inner = 2.0**-level * math.fsum(np.concatenate(all_w) * np.concatenate(all_err))
            bound = abs(est - prev) + inner + float(_sliver(np.array(edge_gap), np.array(edge_val)))
            if not all_ok:
                break
            if level >= MIN_LEVEL and bound <= cfg.abs_tol:
                return QuadResult(est, bound, evals, True)
        prev = est
    return QuadResult(est, bound, evals, False)
