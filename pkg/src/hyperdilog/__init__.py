"""Hyperbolic change of variables on the unit square, a real dilogarithm and
double-exponential quadrature, with a registry of closed-form identities
verified numerically."""

from .change_of_variables import (
    ALPHA,
    MapPoint,
    RotatedPoint,
    SquarePoint,
    curve_f,
    curve_g,
    f_minus_u,
    forward,
    h_curve,
    inverse,
    jacobian,
    rotate,
    u_minus_g,
)
from .errors import DomainError, IntegrandError, UnknownIdentityError
from .identities import registry, verify, verify_all
from .quadrature import (
    QuadConfig,
    QuadResult,
    integrate_finite,
    integrate_semi_infinite,
    integrate_unit_square,
)
from .special_functions import Li2Value, const_alpha, li2, rogers_L, zeta_ref

__version__ = "0.1.0"
