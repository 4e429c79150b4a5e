"""Real dilogarithm, normalized Rogers dilogarithm and reference constants.

``li2`` works on the real branch ``x <= 1`` only. Arguments are reduced into
``|x| <= 1/2`` with two functional equations and then summed as a power
series:

    reflection  Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
    Landen      Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

PI2_6 = math.pi**2 / 6.0

# tail bound |x|^(K+1) / ((K+1)^2 (1-|x|)) must drop below this
_SERIES_TAIL = 1e-17

# Euler-Maclaurin cutoff for zeta(3); dropped term is 1/(4N^4) ~ 2.5e-17
_ZETA3_TERMS = 10_000


class ReductionPath(str, enum.Enum):
    DIRECT_SERIES = "direct_series"
    LANDEN = "landen"
    REFLECTION = "reflection"
    REFLECTION_THEN_LANDEN = "reflection_then_landen"


@dataclass(frozen=True)
class Li2Value:
    value: float
    terms_used: int
    reduction_path: ReductionPath

    def __float__(self) -> float:
        return self.value


def _li2_series(x: float) -> tuple[float, int]:
    """Sum x^k/k^2 until the geometric tail bound falls below ``_SERIES_TAIL``."""
    if x == 0.0:
        return 0.0, 0
    ax = abs(x)
    terms = []
    p = 1.0
    k = 0
    while True:
        k += 1
        p *= x
        terms.append(p / (k * k))
        if ax ** (k + 1) / ((k + 1) ** 2 * (1.0 - ax)) <= _SERIES_TAIL:
            break
    return math.fsum(terms), k


def li2(x: float) -> Li2Value:
    """Dilogarithm Li2(x) for real ``x <= 1``.

    Raises:
        DomainError: if ``x > 1`` or ``x`` is not finite.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"li2 needs a finite argument, got {x!r}")
    if x > 1.0:
        raise DomainError(f"li2 is real only for x <= 1, got {x!r}")

    if x == 1.0:
        # reflection at x = 1 with ln(1) ln(0) -> 0 taken as its limit
        return Li2Value(PI2_6, 0, ReductionPath.REFLECTION)
    if abs(x) <= 0.5:
        s, k = _li2_series(x)
        return Li2Value(s, k, ReductionPath.DIRECT_SERIES)
    if x > 0.5:
        s, k = _li2_series(1.0 - x)
        val = PI2_6 - math.log(x) * math.log1p(-x) - s
        return Li2Value(val, k, ReductionPath.REFLECTION)

    # x < -1/2: Landen sends x to y = x/(x-1) in (1/3, 1)
    l1x = math.log1p(-x)
    landen_shift = -0.5 * l1x * l1x
    y = x / (x - 1.0)
    if y <= 0.5:
        s, k = _li2_series(y)
        return Li2Value(-s + landen_shift, k, ReductionPath.LANDEN)
    # 1 - y = 1/(1-x), formed directly to avoid cancellation
    one_minus_y = 1.0 / (1.0 - x)
    s, k = _li2_series(one_minus_y)
    li2_y = PI2_6 - math.log1p(-one_minus_y) * math.log(one_minus_y) - s
    return Li2Value(-li2_y + landen_shift, k, ReductionPath.REFLECTION_THEN_LANDEN)


def rogers_L(x: float) -> float:
    """Normalized Rogers dilogarithm (6/pi^2)(Li2(x) + ln(x) ln(1-x)/2) on (0, 1)."""
    x = float(x)
    if not (0.0 < x < 1.0):
        raise DomainError(f"rogers_L is defined on (0, 1), got {x!r}")
    return (6.0 / math.pi**2) * (li2(x).value + 0.5 * math.log(x) * math.log1p(-x))


def const_alpha() -> float:
    """asinh(1) = ln(1 + sqrt 2), where the curve g meets the u-axis."""
    return math.log1p(math.sqrt(2.0))


@lru_cache(maxsize=None)
def _zeta3() -> float:
    n = _ZETA3_TERMS
    head = math.fsum(1.0 / (k * k * k) for k in range(n, 0, -1))
    return head + 1.0 / (2.0 * n * n) - 1.0 / (2.0 * n * n * n)


def zeta_ref(s: int) -> float:
    """Reference values of zeta(2) and zeta(3)."""
    if s == 2:
        return PI2_6
    if s == 3:
        return _zeta3()
    raise DomainError(f"zeta_ref supports s in {{2, 3}}, got {s!r}")


def odd_square_sum(n_terms: int = 1_000_000) -> tuple[float, float]:
    """Sum over n >= 0 of 1/(2n+1)^2 as a partial sum plus Euler-Maclaurin tail.

    Returns ``(value, tail_error_bound)``. The partial sum covers
    ``n = 0 .. n_terms``; the tail keeps terms through the first derivative
    correction, so the bound is the size of the next (third-derivative) term.
    """
    if n_terms < 1:
        raise DomainError("odd_square_sum needs at least one term")
    odd = 2.0 * np.arange(n_terms, -1, -1, dtype=np.float64) + 1.0
    head = math.fsum(1.0 / (odd * odd))
    m = 2.0 * n_terms + 1.0
    tail = 1.0 / (2.0 * m) - 1.0 / (2.0 * m * m) + 1.0 / (3.0 * m**3)
    bound = 192.0 / 720.0 / m**5
    return head + tail, bound
