from .polynomials import (  # noqa: F401
    Rational,
    UniPoly,
    PiecewisePoly,
    as_rational,
    format_rational,
    poly_eval,
    integrate_piecewise,
)
