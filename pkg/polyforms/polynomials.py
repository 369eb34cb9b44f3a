"""
Sparse polynomials in the projective coordinates x, y, z, w.

Terms are stored as {exponent tuple: coefficient}; the point p of the blow-up
is [0:0:0:1], so the w-exponent measures how far a term is from vanishing
at p.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from exactnum import as_rational
from kfano.exceptions import DomainError, NonHomogeneousError

VARIABLES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Monomial:
    coefficient: Fraction
    exponents: tuple

    def __post_init__(self):
        if self.coefficient == 0:
            raise DomainError("a monomial needs a nonzero coefficient")
        if len(self.exponents) != 4 or any(e < 0 for e in self.exponents):
            raise DomainError(f"bad exponent tuple {self.exponents}")

    @property
    def degree(self):
        return sum(self.exponents)

    def weight(self, weights):
        return sum(as_rational(w) * e for w, e in zip(weights, self.exponents))


class SparsePoly:
    """Immutable sparse polynomial over the rationals"""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        items = terms.items() if hasattr(terms, "items") else terms
        combined = {}
        for exponents, coefficient in items:
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != 4 or any(e < 0 for e in exponents):
                raise DomainError(f"bad exponent tuple {exponents}")
            combined[exponents] = combined.get(exponents, Fraction(0)) + as_rational(coefficient)
        self._terms = MappingProxyType({e: c for e, c in combined.items() if c != 0})

    @classmethod
    def constant(cls, value):
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def variable(cls, name):
        index = VARIABLES.index(name)
        exponents = tuple(1 if i == index else 0 for i in range(4))
        return cls({exponents: 1})

    @property
    def terms(self):
        return self._terms

    def monomials(self):
        """Terms in descending lexicographic exponent order"""
        return [Monomial(self._terms[e], e) for e in sorted(self._terms, reverse=True)]

    def coefficient(self, exponents):
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self):
        return not self._terms

    def degrees(self):
        return {sum(e) for e in self._terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            return other
        return SparsePoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return SparsePoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        product = []
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return SparsePoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"polynomial power must be a nonnegative integer, got {exponent!r}")
        result = SparsePoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def leading(self):
        exponents = max(self._terms)
        return exponents, self._terms[exponents]

    def exact_quotient(self, divisor):
        """
        Quotient self / divisor when the division is exact, else None.

        Lexicographic long division: if divisor | self then every remainder
        stays a multiple of divisor, so a leading term that the divisor's
        leading term does not divide proves non-divisibility.
        """
        if divisor.is_zero():
            raise DomainError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading()
        remainder = self
        quotient = []
        while not remainder.is_zero():
            e, c = remainder.leading()
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                return None
            step = SparsePoly({shift: c / lead_c})
            quotient.append((shift, c / lead_c))
            remainder = remainder - step * divisor
        return SparsePoly(quotient)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self)!r})"


class HomogPoly(SparsePoly):
    """A homogeneous SparsePoly with a recorded degree (the zero form included)"""

    __slots__ = ("_degree",)

    def __init__(self, terms=(), degree=None):
        super().__init__(terms)
        degrees = self.degrees()
        if len(degrees) > 1:
            raise NonHomogeneousError(f"terms of degrees {sorted(degrees)} in one form")
        if degrees:
            found = degrees.pop()
            if degree is not None and degree != found:
                raise NonHomogeneousError(f"expected degree {degree}, terms have degree {found}")
            degree = found
        elif degree is None:
            degree = 0
        self._degree = degree

    @classmethod
    def of(cls, poly, degree=None):
        if isinstance(poly, HomogPoly) and (degree is None or poly.degree == degree):
            return poly
        return cls(poly.terms, degree)

    @property
    def degree(self):
        return self._degree

    def __eq__(self, other):
        if isinstance(other, HomogPoly) and other.is_zero() and self.is_zero():
            return self._degree == other._degree
        return super().__eq__(other)

    __hash__ = SparsePoly.__hash__


def _format_monomial(exponents):
    parts = []
    for name, e in zip(VARIABLES, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(poly):
    """Canonical text, readable back by parse_poly"""
    if poly.is_zero():
        return "0"
    pieces = []
    for monomial in poly.monomials():
        c = monomial.coefficient
        body = _format_monomial(monomial.exponents)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(("-" if c < 0 else "+", text))
    sign, text = pieces[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out
