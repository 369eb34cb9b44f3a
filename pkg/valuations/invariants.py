"""
A, S and beta of monomial valuations at p on (Y, c*D), and the Futaki check.

For a monomial valuation v with nonnegative weights the volume
vol(-K_Y - t*v) = vol(O(4) - 2E - t*v) equals 3! times the volume of the
(4, 2) slab cut by ell_v >= t, where ell_v has the weights of v.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from divgeom import ANTICANONICAL_VOLUME
from polyforms import monomial_value

from .polytopes import SlabPolytope, integral_linear_over_slab, slice_volume_function
from .weights import LAMBDA_0, LAMBDA_1

logger = logging.getLogger(__name__)

SLAB_OUTER = 4
SLAB_INNER = 2


def valuation_slab(v):
    return SlabPolytope(SLAB_OUTER, SLAB_INNER, v.weights)


def vol_ray_valuation(v):
    """t -> vol(-K_Y - t*v) as a piecewise cubic"""
    return slice_volume_function(valuation_slab(v)).scaled(6)


def volume_integral_valuation(v):
    """Integral over t >= 0 of vol(-K_Y - t*v)"""
    return 6 * integral_linear_over_slab(valuation_slab(v))


def s_invariant_valuation(pair, v):
    return (1 - pair.c) * volume_integral_valuation(v) / ANTICANONICAL_VOLUME


def a_invariant_valuation(pair, v):
    # pi is an isomorphism at the generic point of the center of v
    return v.log_discrepancy - pair.c * monomial_value(v, pair.boundary)


def beta_valuation(pair, v):
    return a_invariant_valuation(pair, v) - s_invariant_valuation(pair, v)


@dataclass(frozen=True)
class FutakiValue:
    valuation: object
    a: Fraction
    s: Fraction
    beta: Fraction


@dataclass(frozen=True)
class FutakiReport:
    passed: bool
    values: tuple

    @property
    def betas(self):
        return tuple(value.beta for value in self.values)


def futaki_value(pair, v):
    a = a_invariant_valuation(pair, v)
    s = s_invariant_valuation(pair, v)
    return FutakiValue(valuation=v, a=a, s=s, beta=a - s)


def futaki_vanishing_check(pair, basis=(LAMBDA_0, LAMBDA_1)):
    """
    Futaki invariant on each basis 1-PS, computed as beta of its valuation.

    Both basis elements are evaluated directly; PASS needs every value to be
    exactly zero.
    """
    values = tuple(futaki_value(pair, v) for v in basis)
    passed = all(value.beta == 0 for value in values)
    logger.info(f"Futaki check at c = {pair.c}: {[str(v.beta) for v in values]} -> {'PASS' if passed else 'FAIL'}")
    return FutakiReport(passed=passed, values=values)
