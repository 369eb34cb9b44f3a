from .polynomials import VARIABLES, Monomial, SparsePoly, HomogPoly, format_poly  # noqa: F401
from .parser import parse_poly, parse_sparse  # noqa: F401
from .forms import (  # noqa: F401
    CONE_WEIGHTS,
    CUSP_WEIGHTS,
    CuspNormalization,
    SingularityClass,
    SingularityTag,
    classify_singularity,
    collect_by_w,
    cusp_model,
    limit_1ps,
    monomial_value,
    multiplicity,
    normalize_cusp_limit,
    order_at_p,
    quadratic_rank,
    rational_cube_root,
    rescale_variable,
)
