"""
Stability threshold of a P^1-bundle Y = P_V(L^-1 + O_V) over a log Fano base
(V, Delta), with boundary Delta_Y + a*V_0 + b*V_inf, and its specialization to
Y = Bl_p P^3 over (P^2, c*C_0).

With L ~ -(K_V + Delta)/r, A = r - (1 - a), B = r + (1 - b) and

    M = (n+1)/(n+2) * (B^(n+2) - A^(n+2)) / (B^(n+1) - A^(n+1))

delta = min(r*delta_base/M, (1 - a)/(M - A), (1 - b)/(B - M)).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from exactnum import as_rational
from kfano.exceptions import ConsistencyError, DomainError, HypothesisError

logger = logging.getLogger(__name__)

CONIC_PAIR_BOUND = Fraction(3, 4)
PUBLISHED_MEAN_COEFFICIENT = Fraction(15, 7)


@dataclass(frozen=True)
class BundleDeltaInput:
    n: int
    r: Fraction
    a: Fraction
    b: Fraction
    delta_base: Fraction

    def __post_init__(self):
        for name in ("r", "a", "b", "delta_base"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        self.validate()

    @property
    def A(self):
        return self.r - (1 - self.a)

    @property
    def B(self):
        return self.r + (1 - self.b)

    def validate(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise HypothesisError("n >= 1", f"n = {self.n}")
        if self.r <= 0:
            raise HypothesisError("r > 0", f"r = {self.r}")
        if self.delta_base <= 0:
            raise HypothesisError("delta(V, Delta) > 0", f"delta_base = {self.delta_base}")
        if self.r > 1:
            if not 0 <= self.a < 1:
                raise HypothesisError("0 <= a < 1", f"a = {self.a} with r = {self.r} > 1")
        elif not 1 - self.r < self.a < 1:
            raise HypothesisError("1 - r < a < 1", f"a = {self.a} with r = {self.r} <= 1")
        if not 0 <= self.b < 1:
            raise HypothesisError("0 <= b < 1", f"b = {self.b}")
        if self.A < 0:
            raise HypothesisError("A = r - (1 - a) >= 0", f"A = {self.A}")


@dataclass(frozen=True)
class DeltaBreakdown:
    term_base: Fraction
    term_zero: Fraction
    term_infty: Fraction
    delta: Fraction
    mean_M: Fraction

    @property
    def terms(self):
        return (self.term_base, self.term_zero, self.term_infty)


def delta_bundle(inp):
    n, A, B = inp.n, inp.A, inp.B
    denominator = B ** (n + 1) - A ** (n + 1)
    if denominator == 0:
        raise HypothesisError("B^(n+1) != A^(n+1)")
    M = Fraction(n + 1, n + 2) * (B ** (n + 2) - A ** (n + 2)) / denominator
    if not A < M < B:
        raise ConsistencyError(f"mean M = {M} is not strictly between A = {A} and B = {B}")
    term_base = inp.r * inp.delta_base / M
    term_zero = (1 - inp.a) / (M - A)
    term_infty = (1 - inp.b) / (B - M)
    delta = min(term_base, term_zero, term_infty)
    logger.debug(f"delta_bundle({inp}) -> M = {M}, terms = ({term_base}, {term_zero}, {term_infty})")
    return DeltaBreakdown(term_base, term_zero, term_infty, delta, M)


def delta_conic_pair(c):
    """delta(P^2, c*C_0) for a smooth conic C_0; None when not known (c >= 3/4)"""
    c = as_rational(c)
    if not 0 < c < 1:
        raise DomainError(f"conic pair coefficient must lie in (0, 1), got {c}")
    if c < CONIC_PAIR_BOUND:
        # (P^2, c*C_0) is K-polystable for c < 3/4
        return Fraction(1)
    return None


def family_a_closed_forms(c, delta_base=1):
    c, delta_base = as_rational(c), as_rational(delta_base)
    A = 2 - 2 * c
    return (
        28 * (3 - 2 * c) / (45 * A) * delta_base,
        Fraction(28) / (17 * A),
        28 * (1 - 2 * c) / (11 * A),
    )


def family_a_terms(c):
    """The bundle formula for (Y, c*S0) with S0 = f2*w^2, f2 of full rank"""
    c = as_rational(c)
    if c <= 0:
        raise HypothesisError("0 < c", f"c = {c}")
    if c >= Fraction(1, 2):
        raise HypothesisError("0 <= b < 1", f"b = 2c = {2 * c}")
    delta_base = delta_conic_pair(c)
    breakdown = delta_bundle(BundleDeltaInput(n=2, r=3 - 2 * c, a=0, b=2 * c, delta_base=delta_base))
    expected = family_a_closed_forms(c, delta_base)
    if breakdown.terms != expected:
        raise ConsistencyError(f"bundle terms {breakdown.terms} differ from closed forms {expected}")
    return breakdown


def _symbolic_terms(k=None):
    c = sp.symbols("c")
    A = 2 - 2 * c
    B = 2 * A
    if k is None:
        M = sp.Rational(3, 4) * (B ** 4 - A ** 4) / (B ** 3 - A ** 3)
    else:
        M = k * A
    return c, ((3 - 2 * c) / M, 1 / (M - A), (1 - 2 * c) / (B - M))


def find_balanced_c():
    """The c in (0, 1/2) where the zero and infinity terms agree"""
    c, (_, zero, infty) = _symbolic_terms()
    roots = [
        root for root in sp.solve(sp.Eq(zero, infty), c)
        if root.is_rational and 0 < root < sp.Rational(1, 2)
    ]
    if len(roots) != 1:
        raise ConsistencyError(f"expected one balanced coefficient in (0, 1/2), found {roots}")
    balanced = Fraction(int(roots[0].p), int(roots[0].q))
    terms = family_a_terms(balanced).terms
    if terms != (1, 1, 1):
        raise ConsistencyError(f"terms at c = {balanced} are {terms}, not all 1")
    logger.info(f"Balanced coefficient c = {balanced}")
    return balanced


@dataclass(frozen=True)
class MeanCoefficientCheck:
    """M/A for B = 2A, as published and as computed from the formula"""

    published: Fraction
    computed: Fraction
    consistent: bool
    computed_reproduces_terms: bool
    published_reproduces_terms: bool


def _reproduces_closed_forms(k):
    c, terms = _symbolic_terms(sp.Rational(k.numerator, k.denominator))
    A = 2 - 2 * c
    closed = (
        sp.Rational(28, 45) * (3 - 2 * c) / A,
        sp.Rational(28, 17) / A,
        sp.Rational(28, 11) * (1 - 2 * c) / A,
    )
    return all(sp.simplify(t - f) == 0 for t, f in zip(terms, closed))


def mean_coefficient_check():
    A = sp.symbols("A", positive=True)
    B = 2 * A
    ratio = sp.simplify(sp.Rational(3, 4) * (B ** 4 - A ** 4) / (B ** 3 - A ** 3) / A)
    computed = Fraction(int(ratio.p), int(ratio.q))
    check = MeanCoefficientCheck(
        published=PUBLISHED_MEAN_COEFFICIENT,
        computed=computed,
        consistent=computed == PUBLISHED_MEAN_COEFFICIENT,
        computed_reproduces_terms=_reproduces_closed_forms(computed),
        published_reproduces_terms=_reproduces_closed_forms(PUBLISHED_MEAN_COEFFICIENT),
    )
    if not check.consistent:
        logger.warning(
            f"mean coefficient M/A is {computed}, not the published {PUBLISHED_MEAN_COEFFICIENT}; "
            f"closed forms follow from {computed}"
        )
    return check
