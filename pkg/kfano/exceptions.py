"""
Exception hierarchy shared by the kfano apps.

Everything derives from ValueError so callers that only care about bad input
can keep catching ValueError.
"""


class KFanoError(ValueError):
    """Base class for all kfano errors"""


class DomainError(KFanoError):
    """An argument lies outside the domain of an operation"""


class PolynomialSyntaxError(KFanoError):
    """Polynomial text does not follow the grammar"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(PolynomialSyntaxError):
    pass


class EmptyPolynomialError(KFanoError):
    pass


class NonHomogeneousError(KFanoError):
    pass


class NotInFamilyError(KFanoError):
    """The surface is not a quartic with a double point at p"""


class NonNormalizedFormError(KFanoError):
    """A rank-2 quadratic part is not presented as a multiple of xy"""


class HypothesisError(KFanoError):
    """A hypothesis of the projective-bundle delta formula is violated"""

    def __init__(self, inequality, detail=""):
        self.inequality = inequality
        message = f"hypothesis violated: {inequality}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class NonPositiveLogDiscrepancyError(KFanoError):
    pass


class ConsistencyError(KFanoError):
    """Two independent computations of the same quantity disagree"""
