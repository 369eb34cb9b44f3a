from dataclasses import dataclass

from exactnum import as_rational
from kfano.exceptions import DomainError


@dataclass(frozen=True)
class MonomialValuation:
    """Monomial valuation at p with weights on x, y, z in the chart w = 1"""

    weights: tuple

    def __post_init__(self):
        weights = tuple(as_rational(w) for w in self.weights)
        if len(weights) != 3:
            raise DomainError(f"expected three weights, got {len(weights)}")
        if any(w < 0 for w in weights) or not any(weights):
            raise DomainError(f"weights {weights} must be nonnegative and not all zero")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def induced_by(cls, one_ps_weights):
        """Valuation of the diagonal 1-PS [t^a x, t^b y, t^c z, t^d w]"""
        a, b, c, d = (as_rational(w) for w in one_ps_weights)
        return cls((a - d, b - d, c - d))

    @property
    def log_discrepancy(self):
        """A_{P^3}(v)"""
        return sum(self.weights)

    def __str__(self):
        return "(" + ",".join(str(w) for w in self.weights) + ")"


LAMBDA_0 = MonomialValuation((3, 0, 1))
LAMBDA_1 = MonomialValuation((0, 3, 1))
