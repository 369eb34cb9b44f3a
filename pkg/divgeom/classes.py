"""
Intersection theory on Y = Bl_p P^3.

Classes are h*H + e*E with H the pullback of a plane and E the exceptional
divisor, so -K_Y = (4, -2). In this basis H^3 = 1, E^3 = 1 and all mixed
triple products vanish.

    pseudoeffective cone: spanned by H - E and E
    nef cone:             spanned by H and H - E
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from exactnum import PiecewisePoly, UniPoly, as_rational, integrate_piecewise
from kfano.exceptions import DomainError, NonPositiveLogDiscrepancyError
from polyforms import HomogPoly, multiplicity, order_at_p, parse_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DivisorClass:
    h: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h", as_rational(self.h))
        object.__setattr__(self, "e", as_rational(self.e))

    def __add__(self, other):
        return DivisorClass(self.h + other.h, self.e + other.e)

    def __sub__(self, other):
        return DivisorClass(self.h - other.h, self.e - other.e)

    def __neg__(self):
        return DivisorClass(-self.h, -self.e)

    def __mul__(self, scalar):
        scalar = as_rational(scalar)
        return DivisorClass(scalar * self.h, scalar * self.e)

    __rmul__ = __mul__

    def is_zero(self):
        return self.h == 0 and self.e == 0

    def __str__(self):
        return f"{self.h}H {'-' if self.e < 0 else '+'} {abs(self.e)}E"


ANTICANONICAL = DivisorClass(4, -2)
ANTICANONICAL_VOLUME = Fraction(56)


def cube(D):
    return D.h ** 3 + D.e ** 3


def is_nef(D):
    return D.e <= 0 and D.h + D.e >= 0


def is_pseff(D):
    return D.h >= 0 and D.e >= -D.h


def is_big(D):
    return D.h > 0 and D.h + D.e > 0


def zariski_positive_part(D):
    """Positive part of the Zariski decomposition; None outside the pseudoeffective cone"""
    if not is_pseff(D):
        return None
    if is_nef(D):
        return D
    # pseudoeffective with e > 0: the negative part is e*E
    return DivisorClass(D.h, 0)


def volume(D):
    positive = zariski_positive_part(D)
    if positive is None:
        return Fraction(0)
    return cube(positive)


def _pseff_threshold(F):
    """Largest t with -K_Y - t*F pseudoeffective"""
    bounds = []
    if F.h > 0:
        bounds.append(ANTICANONICAL.h / F.h)
    if F.h + F.e > 0:
        bounds.append((ANTICANONICAL.h + ANTICANONICAL.e) / (F.h + F.e))
    return min(bounds)


def vol_ray(F):
    """t -> vol(-K_Y - t*F) on [0, tau] as an exact piecewise cubic"""
    if F.is_zero() or not is_pseff(F):
        raise DomainError(f"{F} must be a nonzero pseudoeffective class")
    tau = _pseff_threshold(F)
    h_of_t = UniPoly.linear(ANTICANONICAL.h, -F.h)
    e_of_t = UniPoly.linear(ANTICANONICAL.e, -F.e)

    # wall crossings: e(t) = 0, h(t) + e(t) = 0, h(t) = 0
    walls = {Fraction(0), tau}
    for line in (e_of_t, h_of_t + e_of_t, h_of_t):
        a, b = (line.coefficients + (Fraction(0), Fraction(0)))[:2]
        if b != 0:
            root = -a / b
            if 0 < root < tau:
                walls.add(root)
    breakpoints = sorted(walls)

    pieces = []
    for left, right in zip(breakpoints, breakpoints[1:]):
        mid = (left + right) / 2
        D = ANTICANONICAL - mid * F
        if is_nef(D):
            pieces.append(h_of_t ** 3 + e_of_t ** 3)
        elif is_pseff(D):
            pieces.append(h_of_t ** 3)
        else:
            pieces.append(UniPoly())
    result = PiecewisePoly(tuple(breakpoints), tuple(pieces)).assert_continuous()
    logger.debug(f"vol(-K_Y - t*({F})) = {result}")
    return result


@dataclass(frozen=True)
class LogPairY:
    """(Y, c*D) with D the strict transform of a quartic double at p"""

    c: Fraction
    boundary: HomogPoly

    def __post_init__(self):
        c = as_rational(self.c)
        if not 0 <= c < 1:
            raise DomainError(f"coefficient c = {c} must lie in [0, 1)")
        object.__setattr__(self, "c", c)
        if self.boundary.degree != 4 or order_at_p(self.boundary) != 2:
            raise DomainError(
                f"boundary {self.boundary} is not anticanonical on Y: need a quartic of order 2 at p"
            )

    @property
    def boundary_class(self):
        return DivisorClass(self.boundary.degree, -order_at_p(self.boundary))


@dataclass(frozen=True)
class DivisorOnY:
    label: str
    cls: DivisorClass
    equation: HomogPoly | None = None
    is_exceptional: bool = False

    @classmethod
    def exceptional(cls):
        return cls("E", DivisorClass(0, 1), None, True)

    @classmethod
    def from_equation(cls, label, equation):
        if isinstance(equation, str):
            equation = parse_poly(equation)
        return cls(label, DivisorClass(equation.degree, -order_at_p(equation)), equation, False)


def torus_surface(s):
    """T_s = (x*y*w + s*z^3 = 0)"""
    s = as_rational(s)
    return HomogPoly.of(parse_poly("x*y*w") + parse_poly("z^3") * s, degree=3)


def invariant_divisors(generic_s=2):
    """Torus-invariant prime divisors of (Y, S0'): E, the coordinate planes, and T_1, T_s"""
    generic_s = as_rational(generic_s)
    if generic_s in (0, 1):
        raise DomainError(f"generic T_s needs s different from 0 and 1, got {generic_s}")
    return [
        DivisorOnY.exceptional(),
        DivisorOnY.from_equation("H_w", "w"),
        DivisorOnY.from_equation("H_x", "x"),
        DivisorOnY.from_equation("H_y", "y"),
        DivisorOnY.from_equation("H_z", "z"),
        DivisorOnY.from_equation("T_1", torus_surface(1)),
        DivisorOnY.from_equation(f"T_{generic_s}", torus_surface(generic_s)),
    ]


def s_invariant(pair, F):
    """S_(Y, cD)(F) = (1 - c) * (1/56) * integral of vol(-K_Y - tF)"""
    ray = vol_ray(F)
    integral = integrate_piecewise(ray, *ray.domain)
    return (1 - pair.c) * integral / ANTICANONICAL_VOLUME


def log_discrepancy(pair, F):
    # the boundary is a strict transform, so it never contains E
    if F.is_exceptional:
        mult = 0
    else:
        mult = multiplicity(F.equation, pair.boundary)
    return 1 - pair.c * mult


def beta_divisor(pair, F):
    A = log_discrepancy(pair, F)
    if A <= 0:
        raise NonPositiveLogDiscrepancyError(
            f"A({F.label}) = {A} <= 0: {F.label} is a boundary component with coefficient >= 1"
        )
    return A - s_invariant(pair, F.cls)
