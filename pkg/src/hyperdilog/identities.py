"""Registry of closed-form identities and their numeric verification.

Every identity is data: one or more ``Check`` objects, each pairing a
left-hand-side recipe (a small composable descriptor around the quadrature
and special-function routines) with a closed-form right-hand side.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Protocol

import numpy as np

from . import quadrature as quad
from .change_of_variables import ALPHA, f_minus_u, log_tanh, u_minus_g
from .errors import IntegrandError, UnknownIdentityError
from .quadrature import DEFAULT_CONFIG, QuadConfig
from .special_functions import li2, odd_square_sum, rogers_L, zeta_ref

PI2 = math.pi**2
SQRT2 = math.sqrt(2.0)
LN2 = math.log(2.0)

QUADRATURE_TOL = 1e-10
SPECIAL_TOL = 1e-13


@dataclass(frozen=True)
class Evaluation:
    value: float
    evaluations: int = 0
    converged: bool = True
    error_bound: float = 0.0


class Recipe(Protocol):
    def evaluate(self, cfg: QuadConfig) -> Evaluation: ...

    def describe(self) -> str: ...


def _from_quad(r: quad.QuadResult, scale: float = 1.0) -> Evaluation:
    return Evaluation(scale * r.value, r.evaluations, r.converged, abs(scale) * r.error_bound)


@dataclass(frozen=True)
class Finite:
    """scale * integral of ``integrand`` over (a, b)."""

    integrand: Callable
    a: float
    b: float
    text: str
    scale: float = 1.0

    def evaluate(self, cfg):
        return _from_quad(quad.integrate_finite(self.integrand, self.a, self.b, cfg), self.scale)

    def describe(self):
        return self.text


@dataclass(frozen=True)
class HalfLine:
    integrand: Callable
    a: float
    text: str
    cutoff: float | None = None

    def evaluate(self, cfg):
        return _from_quad(quad.integrate_semi_infinite(self.integrand, self.a, cfg, self.cutoff))

    def describe(self):
        return self.text


@dataclass(frozen=True)
class Square:
    integrand: Callable
    text: str

    def evaluate(self, cfg):
        return _from_quad(quad.integrate_unit_square(self.integrand, cfg))

    def describe(self):
        return self.text


@dataclass(frozen=True)
class Closed:
    """A value computed without quadrature (series, special functions)."""

    fn: Callable[[], float]
    text: str

    def evaluate(self, cfg):
        return Evaluation(float(self.fn()))

    def describe(self):
        return self.text


@dataclass(frozen=True)
class Combination:
    """constant + sum of coef * recipe."""

    terms: tuple[tuple[float, Recipe], ...]
    text: str
    constant: float = 0.0

    def evaluate(self, cfg):
        parts = [(c, r.evaluate(cfg)) for c, r in self.terms]
        return Evaluation(
            self.constant + math.fsum(c * e.value for c, e in parts),
            sum(e.evaluations for _, e in parts),
            all(e.converged for _, e in parts),
            math.fsum(abs(c) * e.error_bound for c, e in parts),
        )

    def describe(self):
        return self.text


@dataclass(frozen=True)
class Check:
    label: str
    lhs: Recipe
    rhs: float


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    reference: str
    checks: tuple[Check, ...]
    tolerance: float = QUADRATURE_TOL
    external: bool = False

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError("identity tolerance must be positive")
        if not self.checks:
            raise ValueError("identity needs at least one check")

    @property
    def rhs(self):
        """Closed-form value; a tuple when the identity bundles several checks."""
        if len(self.checks) == 1:
            return self.checks[0].rhs
        return tuple(c.rhs for c in self.checks)


@dataclass(frozen=True)
class ComponentResult:
    label: str
    lhs: float
    rhs: float
    residual: float
    converged: bool


@dataclass(frozen=True)
class VerificationRecord:
    id: str
    lhs_value: float
    rhs_value: float
    residual: float
    passed: bool
    evaluations: int
    elapsed: float
    converged: bool
    tolerance: float
    reference: str
    external: bool = False
    diagnostic: str | None = None
    components: tuple[ComponentResult, ...] = ()


@dataclass
class VerificationReport:
    records: list[VerificationRecord]
    elapsed: float
    config: QuadConfig = field(default_factory=QuadConfig)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0


class Registry(list):
    """Ordered identity list that also accepts an id as index."""

    def __getitem__(self, key):
        if isinstance(key, str):
            for ident in self:
                if ident.id == key:
                    return ident
            raise UnknownIdentityError(key, self.ids())
        return super().__getitem__(key)

    def ids(self) -> list[str]:
        return [i.id for i in self]


# integrands (numpy-elementwise); logs of products are split so that
# x*y underflowing near the origin cannot produce log(0)

def _k_kernel(x, y):
    xy = x * y
    return 1.0 / ((1.0 - xy) * (1.0 + xy))


def _apostol_kernel(x, y):
    return 1.0 / (1.0 - x * y)


def _apostol_low(u):
    r = np.sqrt(2.0 - u * u)
    return np.arctan(u / r) / r


def _apostol_high(r):
    # second rotated integrand written in r = sqrt2 - u; 2 - u^2 = r (2 sqrt2 - r)
    c = 2.0 * SQRT2 - r
    return np.arctan(np.sqrt(r / c)) / np.sqrt(r * c)


def _log_over_one_minus(t):
    return np.log(t) / (1.0 - t)


def _log_over_one_plus(t):
    return np.log(t) / (1.0 + t)


def _log_over_one_minus_sq(t):
    return np.log(t) / ((1.0 - t) * (1.0 + t))


def _z1(x, y):
    return (np.log(x) + np.log(y)) * _k_kernel(x, y)


def _z2(x, y):
    return np.log(x) * _k_kernel(x, y)


def _z3(x, y):
    return (np.log(x) + np.log(y)) / (1.0 - x * y)


def _z4(x, y):
    xy = x * y
    return np.log1p(-xy) / (1.0 - xy)


def _li2(x: float) -> float:
    return li2(x).value


T1_RECIPE = HalfLine(f_minus_u, 0.0, "int_0^inf [asinh(cosh u) - u] du")
T2_RECIPE = HalfLine(u_minus_g, ALPHA, "int_alpha^inf [u - acosh(sinh u)] du")
T3_RECIPE = HalfLine(log_tanh, ALPHA / 2.0, "int_{alpha/2}^inf ln(tanh z) dz")
B1_RECIPE = Square(_k_kernel, "int int 1/(1 - x^2 y^2) dx dy")


def _l2_check(z: float, name: str) -> Check:
    if z < 1.0:
        lhs = Finite(_log_over_one_minus, z, 1.0, f"int_1^{name} ln t/(1-t) dt", scale=-1.0)
    else:
        lhs = Finite(_log_over_one_minus, 1.0, z, f"int_1^{name} ln t/(1-t) dt")
    return Check(f"z={name}", lhs, _li2(1.0 - z))


def _l3_check(z: float, name: str) -> Check:
    lhs = Finite(_log_over_one_plus, z, 1.0, f"int_{name}^1 ln t/(1+t) dt")
    rhs = -_li2(-z) - math.log(z) * math.log1p(z) - PI2 / 12.0
    return Check(f"z={name}", lhs, rhs)


def _build() -> Registry:
    a2 = ALPHA * ALPHA
    z3 = zeta_ref(3)
    r2m1 = SQRT2 - 1.0
    one_m_inv = 1.0 - 1.0 / SQRT2
    q = Registry()

    def add(ident, desc, ref, checks, tol=QUADRATURE_TOL, external=False):
        q.append(Identity(ident, desc, ref, tuple(checks), tol, external))

    add("B1", "unit-square integral K of 1/(1 - x^2 y^2)",
        "Beukers-Calabi-Kolk: K = int_0^1 int_0^1 dx dy/(1 - x^2 y^2) = pi^2/8",
        [Check("K", B1_RECIPE, PI2 / 8.0)])
    add("B2", "odd-square series equals 3/4 of zeta(2)",
        "K = sum_{n>=0} 1/(2n+1)^2 = (3/4) sum_{n>=1} 1/n^2",
        [Check("(4/3) sum 1/(2n+1)^2",
               Closed(lambda: 4.0 / 3.0 * odd_square_sum()[0],
                      "(4/3) [sum_{n=0}^{10^6} 1/(2n+1)^2 + Euler-Maclaurin tail]"),
               zeta_ref(2))],
        tol=SPECIAL_TOL)
    add("A1", "Beukers integral I of 1/(1 - xy)",
        "Apostol: I = int_0^1 int_0^1 dx dy/(1 - xy) = zeta(2) = pi^2/6",
        [Check("I", Square(_apostol_kernel, "int int 1/(1 - xy) dx dy"), PI2 / 6.0)])
    add("A2", "Apostol's two rotated integrals",
        "Apostol rotation by pi/4: I = pi^2/18 + pi^2/9",
        [Check("low", Finite(_apostol_low, 0.0, SQRT2 / 2.0,
                             "4 int_0^{sqrt2/2} arctan(u/sqrt(2-u^2))/sqrt(2-u^2) du", scale=4.0),
               PI2 / 18.0),
         Check("high", Finite(_apostol_high, 0.0, SQRT2 / 2.0,
                              "4 int_{sqrt2/2}^{sqrt2} arctan((sqrt2-u)/sqrt(2-u^2))/sqrt(2-u^2) du",
                              scale=4.0),
               PI2 / 9.0)])
    add("T1", "first definite integral, upper half of S",
        "int_0^inf [asinh(cosh u) - u] du = pi^2/16",
        [Check("T1", T1_RECIPE, PI2 / 16.0)])
    add("T2", "second definite integral, lower half of S",
        "int_alpha^inf [u - acosh(sinh u)] du = pi^2/16 - ln^2(1+sqrt2)/2",
        [Check("T2", T2_RECIPE, PI2 / 16.0 - 0.5 * a2)])
    add("T3", "third definite integral after the pi/4 rotation",
        "int_{alpha/2}^inf ln(tanh z) dz = ln^2(1+sqrt2)/4 - pi^2/16",
        [Check("T3", T3_RECIPE, 0.25 * a2 - PI2 / 16.0)])
    add("T2b", "area of S from the lower half",
        "area of S = alpha^2 + 2 int_alpha^inf [u - g(u)] du = pi^2/8",
        [Check("area", Combination(((2.0, T2_RECIPE),), "alpha^2 + 2 * T2", constant=a2), PI2 / 8.0)])
    add("L1", "T3 after t = tanh z",
        "int_{sqrt2-1}^1 ln t/(1 - t^2) dt = alpha^2/4 - pi^2/16",
        [Check("L1", Finite(_log_over_one_minus_sq, r2m1, 1.0, "int_{sqrt2-1}^1 ln t/(1-t^2) dt"),
               0.25 * a2 - PI2 / 16.0)])
    add("L2", "log integral reducing to Li2(1 - z)",
        "int_1^z ln t/(1 - t) dt = Li2(1 - z), 0 < z < 2",
        [_l2_check(2.0 - SQRT2, "2-sqrt2"), _l2_check(0.5, "1/2"), _l2_check(1.5, "3/2")])
    add("L3", "log integral reducing to Li2(-z)",
        "int_z^1 ln t/(1 + t) dt = -Li2(-z) - ln z ln(z+1) - pi^2/12",
        [_l3_check(r2m1, "sqrt2-1"), _l3_check(0.5, "1/2")])
    add("D1", "two-term dilogarithm identity",
        "Li2(sqrt2-1) + Li2(1-1/sqrt2) = pi^2/8 - ln^2(1+sqrt2)/2 - ln^2(2)/8",
        [Check("D1", Closed(lambda: _li2(r2m1) + _li2(one_m_inv), "Li2(sqrt2-1) + Li2(1-1/sqrt2)"),
               PI2 / 8.0 - 0.5 * a2 - LN2 * LN2 / 8.0)],
        tol=SPECIAL_TOL)
    add("D2", "Euler reflection at z = 2 - sqrt2 applied to the partial-fraction split",
        "Li2(sqrt2-1) - Li2(1-sqrt2) = alpha^2/2 - pi^2/8 + pi^2/4 - ln^2(sqrt2-1)",
        [Check("D2", Closed(lambda: _li2(r2m1) - _li2(1.0 - SQRT2), "Li2(sqrt2-1) - Li2(1-sqrt2)"),
               0.5 * a2 - PI2 / 8.0 + PI2 / 4.0 - math.log(r2m1) ** 2)],
        tol=SPECIAL_TOL)
    add("D3", "Landen's formula at z = 1 - sqrt2",
        "Li2(1-sqrt2) = -Li2(1-1/sqrt2) - ln^2(2)/8",
        [Check("D3", Closed(lambda: _li2(1.0 - SQRT2) + _li2(one_m_inv) + LN2 * LN2 / 8.0,
                            "Li2(1-sqrt2) + Li2(1-1/sqrt2) + ln^2(2)/8"),
               0.0)],
        tol=SPECIAL_TOL)
    add("D4", "Bytsko's Rogers dilogarithm identity",
        "L(sqrt2-1) + L(1-1/sqrt2) = 3/4, L normalized Rogers dilogarithm",
        [Check("D4", Closed(lambda: rogers_L(r2m1) + rogers_L(one_m_inv), "L(sqrt2-1) + L(1-1/sqrt2)"),
               0.75)],
        tol=SPECIAL_TOL)
    add("Z1", "zeta(3) unit-square integral with ln(xy)/(1 - x^2 y^2)",
        "int int ln(xy)/(1 - x^2 y^2) dx dy = -7/4 zeta(3)",
        [Check("Z1", Square(_z1, "int int ln(xy)/(1 - x^2 y^2) dx dy"), -1.75 * z3)], external=True)
    add("Z2", "zeta(3) unit-square integral with ln(x)/(1 - x^2 y^2)",
        "int int ln(x)/(1 - x^2 y^2) dx dy = -7/8 zeta(3)",
        [Check("Z2", Square(_z2, "int int ln(x)/(1 - x^2 y^2) dx dy"), -0.875 * z3)], external=True)
    add("Z3", "zeta(3) unit-square integral with ln(xy)/(1 - xy)",
        "int int ln(xy)/(1 - xy) dx dy = -2 zeta(3)",
        [Check("Z3", Square(_z3, "int int ln(xy)/(1 - xy) dx dy"), -2.0 * z3)], external=True)
    add("Z4", "zeta(3) unit-square integral with ln(1 - xy)/(1 - xy)",
        "int int ln(1 - xy)/(1 - xy) dx dy = -zeta(3)",
        [Check("Z4", Square(_z4, "int int ln(1 - xy)/(1 - xy) dx dy"), -z3)], external=True)
    add("S1", "area of S agrees between the upper- and lower-half formulas",
        "2 int_0^inf [f(u) - u] du = alpha^2 + 2 int_alpha^inf [u - g(u)] du",
        [Check("S1", Combination(((2.0, T1_RECIPE), (-2.0, T2_RECIPE)),
                                 "2 * T1 - alpha^2 - 2 * T2", constant=-a2), 0.0)])
    return q


_REGISTRY: Registry | None = None


def registry() -> Registry:
    """All identities in fixed order. Built once; entries are immutable."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build()
    return Registry(_REGISTRY)


def verify(ident: str, cfg: QuadConfig = DEFAULT_CONFIG) -> VerificationRecord:
    """Evaluate one identity and compare it with its closed form.

    Multi-check identities report the check with the largest residual as
    their lhs/rhs pair; every check must pass for the record to pass.
    """
    identity = registry()[ident]
    start = time.perf_counter()
    components = []
    evaluations = 0
    diagnostic = None
    try:
        for check in identity.checks:
            ev = check.lhs.evaluate(cfg)
            evaluations += ev.evaluations
            components.append(ComponentResult(check.label, ev.value, check.rhs,
                                              abs(ev.value - check.rhs), ev.converged))
    except IntegrandError as exc:
        diagnostic = f"integrand error: {exc}"
    elapsed = time.perf_counter() - start

    if diagnostic is not None:
        rhs = identity.checks[len(components)].rhs if len(components) < len(identity.checks) else math.nan
        return VerificationRecord(identity.id, math.nan, rhs, math.nan, False, evaluations, elapsed,
                                  False, identity.tolerance, identity.reference, identity.external,
                                  diagnostic, tuple(components))

    worst = max(components, key=lambda c: c.residual)
    converged = all(c.converged for c in components)
    passed = converged and all(c.residual <= identity.tolerance for c in components)
    if not converged:
        bad = [c.label for c in components if not c.converged]
        diagnostic = f"quadrature did not converge for: {', '.join(bad)}"
    return VerificationRecord(identity.id, worst.lhs, worst.rhs, worst.residual, passed, evaluations,
                              elapsed, converged, identity.tolerance, identity.reference,
                              identity.external, diagnostic, tuple(components))


def verify_all(cfg: QuadConfig = DEFAULT_CONFIG, ids: Iterable[str] | None = None,
               jobs: int = 1) -> VerificationReport:
    """Verify every identity (or the selected ``ids``) in registry order."""
    reg = registry()
    if ids is None:
        selected = reg.ids()
    else:
        wanted = set(ids)
        for i in wanted:
            reg[i]  # raises UnknownIdentityError before any work starts
        selected = [i for i in reg.ids() if i in wanted]
    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda i: verify(i, cfg), selected))
    else:
        records = [verify(i, cfg) for i in selected]
    return VerificationReport(records, time.perf_counter() - start, cfg)
