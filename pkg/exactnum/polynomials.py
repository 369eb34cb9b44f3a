"""
Exact rational numbers, univariate polynomials and piecewise polynomials.

Everything here is built on fractions.Fraction; no floating point value ever
enters a computation.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from kfano.exceptions import ConsistencyError, DomainError

logger = logging.getLogger(__name__)

Rational = Fraction


def as_rational(value):
    """Coerce an int, Fraction or "p/q" string to a Fraction"""
    if isinstance(value, bool):
        raise DomainError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise DomainError(f"not a rational number: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    raise DomainError(f"not a rational number: {value!r}")


def format_rational(value):
    """Serialize as "p/q", always with a slash"""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in t; coefficients[i] multiplies t**i."""

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def linear(cls, a, b):
        """a + b*t"""
        return cls((a, b))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def is_zero(self):
        return not self.coefficients

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"polynomial power must be a nonnegative integer, got {exponent!r}")
        result = UniPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, t):
        return poly_eval(self, t)

    def derivative(self):
        return UniPoly(tuple(i * c for i, c in enumerate(self.coefficients))[1:])

    def antiderivative(self):
        """Antiderivative vanishing at t = 0"""
        return UniPoly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coefficients)))

    def integrate(self, lo, hi):
        F = self.antiderivative()
        return F(hi) - F(lo)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "t" if i == 1 else f"t^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_eval(p, t):
    """Exact value p(t) by Horner's rule"""
    t = as_rational(t)
    value = Fraction(0)
    for c in reversed(p.coefficients):
        value = value * t + c
    return value


@dataclass(frozen=True)
class PiecewisePoly:
    """
    A function given by one polynomial per closed interval [t_i, t_{i+1}].

    At an interior breakpoint the left piece supplies the value.
    """

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        bps = tuple(as_rational(b) for b in self.breakpoints)
        pieces = tuple(self.pieces)
        if len(bps) < 2:
            raise DomainError("a piecewise polynomial needs at least two breakpoints")
        if len(pieces) != len(bps) - 1:
            raise DomainError(
                f"expected {len(bps) - 1} pieces for {len(bps)} breakpoints, got {len(pieces)}"
            )
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise DomainError(f"breakpoints must be strictly increasing: {bps}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pieces)

    @property
    def domain(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_index(self, t):
        t = as_rational(t)
        lo, hi = self.domain
        if t < lo or t > hi:
            raise DomainError(f"{t} lies outside the domain [{lo}, {hi}]")
        for i, right in enumerate(self.breakpoints[1:]):
            if t <= right:
                return i
        return len(self.pieces) - 1

    def evaluate(self, t):
        return self.pieces[self.piece_index(t)](t)

    __call__ = evaluate

    def is_continuous(self):
        for i, b in enumerate(self.breakpoints[1:-1]):
            if self.pieces[i](b) != self.pieces[i + 1](b):
                return False
        return True

    def assert_continuous(self):
        if not self.is_continuous():
            raise ConsistencyError(f"piecewise polynomial is discontinuous: {self}")
        return self

    def scaled(self, factor):
        factor = as_rational(factor)
        return PiecewisePoly(self.breakpoints, tuple(p * factor for p in self.pieces))

    def integrate(self, lo=None, hi=None):
        return integrate_piecewise(
            self,
            self.domain[0] if lo is None else lo,
            self.domain[1] if hi is None else hi,
        )

    @classmethod
    def interpolate(cls, func, breakpoints, degree=3):
        """
        Rebuild a function that is polynomial of degree <= `degree` on every
        interval between consecutive breakpoints.

        Each piece is the Lagrange interpolant through degree+1 equally spaced
        points of its interval; one further interior point checks the fit.
        """
        bps = sorted({as_rational(b) for b in breakpoints})
        pieces = []
        for left, right in zip(bps, bps[1:]):
            step = (right - left) / degree if degree else right - left
            nodes = [left + k * step for k in range(degree + 1)]
            values = [as_rational(func(x)) for x in nodes]
            piece = _lagrange(nodes, values)
            probe = left + (right - left) / (2 * degree + 3)
            if piece(probe) != func(probe):
                raise ConsistencyError(
                    f"function is not polynomial of degree <= {degree} on [{left}, {right}]"
                )
            pieces.append(piece)
        logger.debug(f"Interpolated {len(pieces)} pieces on breakpoints {bps}")
        return cls(tuple(bps), tuple(pieces))

    def __str__(self):
        return "; ".join(
            f"[{a}, {b}]: {p}" for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces)
        )


def _lagrange(nodes, values):
    result = UniPoly()
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        if yi == 0:
            continue
        basis = UniPoly.constant(1)
        for j, xj in enumerate(nodes):
            if j != i:
                basis = basis * UniPoly.linear(-xj, 1) * (1 / (xi - xj))
        result = result + basis * yi
    return result


def integrate_piecewise(f, lo, hi):
    """Exact definite integral of a PiecewisePoly over [lo, hi]"""
    lo, hi = as_rational(lo), as_rational(hi)
    start, end = f.domain
    if lo > hi:
        raise DomainError(f"integration bounds reversed: [{lo}, {hi}]")
    if lo < start or hi > end:
        raise DomainError(f"[{lo}, {hi}] is not contained in the domain [{start}, {end}]")
    total = Fraction(0)
    for left, right, piece in zip(f.breakpoints, f.breakpoints[1:], f.pieces):
        a, b = max(left, lo), min(right, hi)
        if a < b:
            total += piece.integrate(a, b)
    return total
