"""
Operations on the quartic S = f2*w^2 + f3*w + f4 near p = [0:0:0:1].
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import sympy as sp

from exactnum import as_rational
from kfano.exceptions import DomainError, NonNormalizedFormError, NotInFamilyError

from .parser import parse_poly
from .polynomials import HomogPoly, SparsePoly

logger = logging.getLogger(__name__)

XY = (1, 1, 0, 0)
Z_CUBED = (0, 0, 3, 0)

CUSP_WEIGHTS = (0, 0, 1, 3)
CONE_WEIGHTS = (0, 0, 0, 1)


class SingularityTag(str, Enum):
    A1 = "A1"
    A2 = "A2"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class SingularityClass:
    tag: SingularityTag
    detail: str
    rank: int


@dataclass(frozen=True)
class CuspNormalization:
    """How the weighted limit of an A2 quartic is brought to x*y*w^2 + z^3*w"""

    raw_limit: HomogPoly
    gamma: Fraction
    cube_root: Fraction | None
    model: HomogPoly

    @property
    def rational_rescaling(self):
        return self.cube_root is not None


def cusp_model():
    return parse_poly("x*y*w^2 + z^3*w")


def _require_quartic(S):
    if S.is_zero():
        raise DomainError("the zero polynomial defines no surface")
    if S.degree != 4:
        raise NotInFamilyError(f"expected a quartic surface, got degree {S.degree}")


def collect_by_w(S):
    """Split S = f2*w^2 + f3*w + f4 with f_i forms in x, y, z"""
    _require_quartic(S)
    parts = {2: {}, 3: {}, 4: {}}
    for exponents, coefficient in S.terms.items():
        ew = exponents[3]
        if ew >= 3:
            raise NotInFamilyError(
                "surface smooth or has multiplicity < 2 at p: "
                f"term with w-degree {ew} present"
            )
        parts[4 - ew][exponents[:3] + (0,)] = coefficient
    return tuple(HomogPoly(parts[i], degree=i) for i in (2, 3, 4))


def quadratic_rank(f2):
    """Rank of the symmetric matrix of a ternary quadratic form"""
    if not f2.is_zero() and f2.degree != 2:
        raise DomainError(f"expected a quadratic form, got degree {f2.degree}")
    matrix = [[sp.Integer(0)] * 3 for _ in range(3)]
    for exponents, coefficient in f2.terms.items():
        if exponents[3]:
            raise DomainError("quadratic form must involve only x, y, z")
        c = sp.Rational(coefficient.numerator, coefficient.denominator)
        indices = [i for i in range(3) for _ in range(exponents[i])]
        i, j = indices
        if i == j:
            matrix[i][i] += c
        else:
            matrix[i][j] += c / 2
            matrix[j][i] += c / 2
    return int(sp.Matrix(matrix).rank())


def classify_singularity(S):
    f2, f3, _ = collect_by_w(S)
    rank = quadratic_rank(f2)
    if rank == 3:
        return SingularityClass(SingularityTag.A1, "f2 has full rank: ordinary double point at p", rank)
    if rank <= 1:
        return SingularityClass(
            SingularityTag.DEGENERATE,
            f"f2 has rank {rank}: the tangent cone at p is a double plane or worse",
            rank,
        )
    if set(f2.terms) != {XY}:
        raise NonNormalizedFormError(
            f"rank-2 quadratic part {f2} is not a multiple of x*y; "
            "change coordinates so that the two tangent planes are x = 0 and y = 0"
        )
    if f3.coefficient(Z_CUBED) == 0:
        return SingularityClass(
            SingularityTag.DEGENERATE,
            "f2 = x*y but f3 has no z^3 term: worse than A2 at p",
            rank,
        )
    return SingularityClass(SingularityTag.A2, "f2 = x*y and f3 has a nonzero z^3 term: A2 at p", rank)


def limit_1ps(S, weights):
    """
    Limit of S under the 1-PS acting with the given weights on x, y, z, w.

    The limit keeps the terms of maximal weight; the inverse 1-PS would keep
    the minimal-weight part instead.
    """
    if S.is_zero():
        raise DomainError("cannot take the limit of the zero polynomial")
    weights = tuple(as_rational(w) for w in weights)
    if len(weights) != 4:
        raise DomainError(f"expected four weights, got {len(weights)}")

    def weight(exponents):
        return sum(w * e for w, e in zip(weights, exponents))

    top = max(weight(e) for e in S.terms)
    kept = {e: c for e, c in S.terms.items() if weight(e) == top}
    return HomogPoly(kept, degree=S.degree) if isinstance(S, HomogPoly) else SparsePoly(kept)


def multiplicity(divisor, S):
    """Largest k with divisor**k dividing S"""
    if divisor.is_zero() or divisor.degrees() == {0}:
        raise DomainError("multiplicity needs a nonconstant divisor")
    k = 0
    current = S
    while not current.is_zero():
        quotient = current.exact_quotient(divisor)
        if quotient is None:
            break
        k += 1
        current = quotient
    return k


def monomial_value(v, S):
    """Value of a monomial valuation at p on S, in the chart w = 1"""
    if S.is_zero():
        raise DomainError("the zero polynomial has infinite value")
    weights = tuple(as_rational(w) for w in getattr(v, "weights", v))
    return min(sum(w * e for w, e in zip(weights, exponents[:3])) for exponents in S.terms)


def order_at_p(S):
    """Vanishing order of S at p = [0:0:0:1]"""
    if S.is_zero():
        raise DomainError("the zero polynomial has infinite order")
    return min(sum(exponents[:3]) for exponents in S.terms)


def rescale_variable(S, index, factor):
    """Substitute variable[index] -> factor * variable[index]"""
    factor = as_rational(factor)
    scaled = {e: c * factor ** e[index] for e, c in S.terms.items()}
    return HomogPoly(scaled, degree=S.degree) if isinstance(S, HomogPoly) else SparsePoly(scaled)


def rational_cube_root(q):
    q = as_rational(q)
    sign = -1 if q < 0 else 1
    num, num_exact = sp.integer_nthroot(abs(q.numerator), 3)
    den, den_exact = sp.integer_nthroot(q.denominator, 3)
    if not (num_exact and den_exact):
        return None
    return Fraction(sign * int(num), int(den))


def normalize_cusp_limit(S):
    """
    Weighted limit of an A2 quartic, rescaled to x*y*w^2 + z^3*w.

    With f2 = a*xy and z^3-coefficient b in f3 the limit is
    a*xy*w^2 + b*z^3*w. After dividing by a, z is rescaled by the cube root of
    gamma = b/a; when that root is irrational the rescaling is only recorded.
    """
    f2, f3, _ = collect_by_w(S)
    a = f2.coefficient(XY)
    b = f3.coefficient(Z_CUBED)
    if a == 0 or set(f2.terms) != {XY} or b == 0:
        raise NonNormalizedFormError("cusp normalization needs f2 = a*xy and a nonzero z^3 term")
    raw = limit_1ps(S, CUSP_WEIGHTS)
    gamma = b / a
    root = rational_cube_root(gamma)
    model = cusp_model()
    if root is not None:
        rescaled = rescale_variable(HomogPoly.of(raw * (1 / a), degree=4), 2, 1 / root)
        if rescaled != model:
            raise NonNormalizedFormError(f"rescaled limit {rescaled} differs from {model}")
    else:
        logger.warning(f"z^3 coefficient ratio {gamma} is not a rational cube; rescaling tracked symbolically")
    return CuspNormalization(raw_limit=raw, gamma=gamma, cube_root=root, model=model)
